#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polynet/monomials.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

TEST_CASE("basis enumeration counts match binomials") {
    for (int n = 1; n <= 4; ++n) {
        for (int d = 0; d <= 6; ++d) {
            const auto basis = enumerate_basis(n, d);
            CHECK(basis.size() == oracles::binom(n + d, d));
            CHECK(basis.size() == basis_size(n, d));
        }
    }
}

TEST_CASE("colex order on known cases") {
    const auto b1 = enumerate_basis(1, 2);
    REQUIRE(b1.size() == 3);
    CHECK(b1.exponents(0) == MultiIndex{0});
    CHECK(b1.exponents(1) == MultiIndex{1});
    CHECK(b1.exponents(2) == MultiIndex{2});

    // 1, x1, x1^2, x2, x1 x2, x2^2
    const auto b2 = enumerate_basis(2, 2);
    REQUIRE(b2.size() == 6);
    CHECK(b2.exponents(0) == MultiIndex{0, 0});
    CHECK(b2.exponents(1) == MultiIndex{1, 0});
    CHECK(b2.exponents(2) == MultiIndex{2, 0});
    CHECK(b2.exponents(3) == MultiIndex{0, 1});
    CHECK(b2.exponents(4) == MultiIndex{1, 1});
    CHECK(b2.exponents(5) == MultiIndex{0, 2});

    CHECK(enumerate_basis(3, 2).size() == 10);
}

TEST_CASE("colex comparison is a strict order along the enumeration") {
    for (int n = 1; n <= 4; ++n) {
        for (int d = 0; d <= 6; ++d) {
            const auto basis = enumerate_basis(n, d);
            for (std::size_t k = 0; k + 1 < basis.size(); ++k) {
                CHECK(colex_less(basis.exponents(k), basis.exponents(k + 1)));
                CHECK(!colex_less(basis.exponents(k + 1), basis.exponents(k)));
            }
            // well-definedness condition for the generalized Wronskian:
            // total degree of position k never exceeds k
            for (std::size_t k = 0; k < basis.size(); ++k) {
                CHECK(total_degree(basis.exponents(k)) <= static_cast<int>(k));
            }
        }
    }
}

TEST_CASE("rejects n = 0") {
    CHECK_THROWS_AS(enumerate_basis(0, 2), std::invalid_argument);
}

TEST_CASE("eval_poly basics") {
    const auto basis = enumerate_basis(2, 2);
    SUBCASE("constant") {
        MultiPoly p(basis, {0.0, 0.0}, {5.0, 0, 0, 0, 0, 0});
        CHECK(p.eval({1.7, -3.2}) == doctest::Approx(5.0));
    }
    SUBCASE("identity monomial") {
        const auto b1 = enumerate_basis(1, 2);
        MultiPoly p(b1, {0.0}, {0.0, 1.0, 0.0});
        CHECK(p.eval({3.0}) == doctest::Approx(3.0));
    }
    SUBCASE("x1^2 - x1 x2 centered at (1,1)") {
        // expanded around (1,1): u1^2 - u1 u2 + u1 - u2 with u = x - (1,1)
        MultiPoly p(basis, {1.0, 1.0}, {0.0, 1.0, 1.0, -1.0, -1.0, 0.0});
        CHECK(p.eval({2.0, 3.0}) == doctest::Approx(-2.0));
        // direct-evaluation oracle on a few points
        for (double x1 : {-1.0, 0.5, 2.0}) {
            for (double x2 : {-2.0, 0.0, 3.0}) {
                CHECK(p.eval({x1, x2}) == doctest::Approx(x1 * x1 - x1 * x2).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("recenter preserves evaluation and round-trips") {
    const auto basis = enumerate_basis(2, 3);
    SUBCASE("constant keeps its coefficients") {
        MultiPoly p(basis, {0.0, 0.0}, std::vector<double>(basis.size(), 0.0));
        p.coeffs[0] = 4.25;
        const auto q = recenter(p, {2.0, -3.0});
        for (std::size_t k = 0; k < basis.size(); ++k)
            CHECK(q.coeffs[k] == doctest::Approx(p.coeffs[k]));
    }
    SUBCASE("x recentered to 1 gives 1 + (x-1)") {
        const auto b1 = enumerate_basis(1, 1);
        MultiPoly p(b1, {0.0}, {0.0, 1.0});
        const auto q = recenter(p, {1.0});
        CHECK(q.coeffs[0] == doctest::Approx(1.0));
        CHECK(q.coeffs[1] == doctest::Approx(1.0));
    }
    SUBCASE("random degree-3 recenter: evaluation oracle on a 5x5 grid") {
        Rng rng(7);
        std::vector<double> coeffs(basis.size());
        double scale = 0.0;
        for (auto& c : coeffs) {
            c = rng.normal();
            scale = std::max(scale, std::abs(c));
        }
        MultiPoly p(basis, {0.0, 0.0}, coeffs);
        const auto q = recenter(p, {0.6, -1.1});
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const std::vector<double> x{-1.0 + 0.5 * i, -1.0 + 0.5 * j};
                CHECK(std::abs(p.eval(x) - q.eval(x)) <= 1e-12 * std::max(scale, 1.0) * 50);
            }
        }
        // round-trip coefficients
        const auto back = recenter(q, {0.0, 0.0});
        for (std::size_t k = 0; k < basis.size(); ++k) {
            CHECK(back.coeffs[k] ==
                  doctest::Approx(p.coeffs[k]).epsilon(1e-10).scale(std::max(scale, 1.0)));
        }
    }
}

TEST_CASE("dimension mismatches are rejected") {
    const auto basis = enumerate_basis(2, 2);
    MultiPoly p(basis, {0.0, 0.0}, std::vector<double>(basis.size(), 1.0));
    CHECK_THROWS_AS(p.eval({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(recenter(p, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly(basis, {0.0}, std::vector<double>(basis.size(), 0.0)),
                    std::invalid_argument);
}

TEST_CASE("compose_affine expands sigma(w.u + y0) exactly") {
    const auto basis = enumerate_basis(2, 3);
    const std::vector<double> uni{1.0, 2.0, -0.5, 0.25};  // cubic in t
    const std::vector<double> w{0.5, -1.25};
    const double y0 = 0.7;
    const auto coeffs = compose_affine(basis, uni, w, y0);
    MultiPoly p(basis, {0.0, 0.0}, coeffs);
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const std::vector<double> u{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double t = y0 + w[0] * u[0] + w[1] * u[1];
        const double direct = uni[0] + t * (uni[1] + t * (uni[2] + t * uni[3]));
        CHECK(p.eval(u) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("differentiate_multi matches hand derivatives") {
    const auto basis = enumerate_basis(2, 3);
    // p = x1^2 x2 + 3 x1
    std::vector<double> c(basis.size(), 0.0);
    c[*basis.position({2, 1})] = 1.0;
    c[*basis.position({1, 0})] = 3.0;
    const auto dx1 = differentiate(basis, c, 0);
    CHECK(dx1[*basis.position({1, 1})] == doctest::Approx(2.0));
    CHECK(dx1[*basis.position({0, 0})] == doctest::Approx(3.0));
    const auto dmix = differentiate_multi(basis, c, {2, 1});
    CHECK(dmix[*basis.position({0, 0})] == doctest::Approx(2.0));
}

TEST_CASE("effective degree ignores negligible coefficients") {
    const auto basis = enumerate_basis(1, 4);
    MultiPoly p(basis, {0.0}, {1.0, 2.0, 3.0, 0.0, 1e-15});
    CHECK(p.effective_degree(1e-12) == 2);
    CHECK(p.effective_degree(0.0) == 4);
}
