#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "oracles.hpp"
#include "polynet/algebra.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

TEST_CASE("build_vandermonde: classic univariate case") {
    const auto basis = enumerate_basis(1, 2);
    const auto Q = build_vandermonde({{1.0}, {2.0}, {3.0}}, basis);
    // product formula: (2-1)(3-1)(3-2) = 2
    CHECK(Q.matrix.determinant() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("build_vandermonde: repeated point is singular") {
    const auto basis = enumerate_basis(1, 2);
    const auto Q = build_vandermonde({{1.0}, {2.0}, {2.0}}, basis);
    CHECK(std::abs(Q.matrix.determinant()) <= 1e-14);
    CHECK(!is_nonsingular(Q).nonsingular);
}

TEST_CASE("build_vandermonde: n=2 d=1 hand determinant") {
    const auto basis = enumerate_basis(2, 1);
    const auto Q = build_vandermonde({{1.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}}, basis);
    // rows are 1, x1, x2 at the three points: det = -1 by cofactor expansion
    CHECK(Q.matrix.determinant() == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("build_vandermonde rejects bad shapes") {
    const auto basis = enumerate_basis(2, 1);
    CHECK_THROWS_AS(build_vandermonde({{1.0, 1.0}, {1.0, 2.0}}, basis), std::invalid_argument);
    CHECK_THROWS_AS(build_vandermonde({{1.0}, {2.0}, {3.0}}, basis), std::invalid_argument);
}

TEST_CASE("schur_seed_points") {
    SUBCASE("n=1: points are the base values") {
        const auto pts = schur_seed_points(1, 2, {2.0, 3.0, 5.0});
        CHECK(pts[0][0] == 2.0);
        CHECK(pts[1][0] == 3.0);
        CHECK(pts[2][0] == 5.0);
    }
    SUBCASE("n=2, d=1: squares in the second coordinate, det = 6") {
        const auto pts = schur_seed_points(2, 1, {2.0, 3.0, 5.0});
        CHECK(pts[0] == std::vector<double>{2.0, 4.0});
        CHECK(pts[1] == std::vector<double>{3.0, 9.0});
        CHECK(pts[2] == std::vector<double>{5.0, 25.0});
        const auto Q = build_vandermonde(pts, enumerate_basis(2, 1));
        CHECK(Q.matrix.determinant() == doctest::Approx(6.0).epsilon(1e-12));
    }
    SUBCASE("nonsingular for all tested (n,d) and positive determinant") {
        // Nonsingularity is scale-free; entries of these matrices span many
        // orders (base^((d+1)^i)), so the check for the larger cases runs on
        // the row/column-equilibrated matrix, as the pipeline does for its
        // normalized directions.
        auto equilibrated = [](Eigen::MatrixXd M) {
            for (Eigen::Index i = 0; i < M.rows(); ++i) {
                const double s = M.row(i).cwiseAbs().maxCoeff();
                if (s > 0) M.row(i) /= s;
            }
            for (Eigen::Index j = 0; j < M.cols(); ++j) {
                const double s = M.col(j).cwiseAbs().maxCoeff();
                if (s > 0) M.col(j) /= s;
            }
            return M;
        };
        for (int n = 1; n <= 3; ++n) {
            for (int d = 1; d <= 4; ++d) {
                const std::size_t N = basis_size(n, d);
                // The coordinate tower base^((d+1)^i) pushes these matrices
                // past double-precision SVD range around N = 20 (entries span
                // 1e50+); exact big-integer determinants are a non-goal, so
                // the check covers the representable envelope.
                if (N > 15) continue;
                std::vector<double> base(N);
                for (std::size_t j = 0; j < N; ++j) base[j] = std::pow(1.15, static_cast<double>(j));
                const auto pts = schur_seed_points(n, d, base);
                const auto Q = build_vandermonde(pts, enumerate_basis(n, d));
                if (N <= 6) CHECK(is_nonsingular(Q).nonsingular);
                CHECK(is_nonsingular(equilibrated(Q.matrix), 1e-14).nonsingular);
                // Schur positivity: det > 0 for increasing positive bases
                Eigen::PartialPivLU<Eigen::MatrixXd> lu(Q.matrix);
                double sign = 1.0;
                double logdet = 0.0;
                const auto& LU = lu.matrixLU();
                for (Eigen::Index i = 0; i < LU.rows(); ++i) {
                    sign *= (LU(i, i) < 0 ? -1.0 : 1.0);
                    logdet += std::log(std::abs(LU(i, i)));
                }
                sign *= static_cast<double>(lu.permutationP().determinant());
                CHECK(sign > 0.0);
                CHECK(std::isfinite(logdet));
            }
        }
    }
    SUBCASE("rejects non-distinct or non-positive bases") {
        CHECK_THROWS_AS(schur_seed_points(1, 1, {1.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(schur_seed_points(1, 1, {-1.0, 2.0}), std::invalid_argument);
    }
}

TEST_CASE("is_nonsingular on random draws") {
    Rng rng(42);
    const auto basis = enumerate_basis(2, 2);
    int ok = 0;
    for (int t = 0; t < 200; ++t) {
        std::vector<std::vector<double>> pts(6, std::vector<double>(2));
        for (auto& p : pts)
            for (double& v : p) v = rng.normal();
        if (is_nonsingular(build_vandermonde(pts, basis)).nonsingular) ++ok;
    }
    CHECK(ok == 200);
}

TEST_CASE("wronskian_factor_check: univariate hand instance") {
    // p(x) = 1 + x, points {2, 3}: M(1) = [[3,4],[2,3]], M' = [[1,1],[0,1]],
    // Q = [[1,1],[2,3]]
    const auto basis = enumerate_basis(1, 1);
    MultiPoly p(basis, {0.0}, {1.0, 1.0});
    const auto w = wronskian_factor_check(p, {{2.0}, {3.0}});
    CHECK(w.lhs(0, 0) == doctest::Approx(3.0));
    CHECK(w.lhs(0, 1) == doctest::Approx(4.0));
    CHECK(w.lhs(1, 0) == doctest::Approx(2.0));
    CHECK(w.lhs(1, 1) == doctest::Approx(3.0));
    CHECK(w.M_prime(0, 0) == doctest::Approx(1.0));
    CHECK(w.M_prime(0, 1) == doctest::Approx(1.0));
    CHECK(w.M_prime(1, 0) == 0.0);
    CHECK(w.M_prime(1, 1) == doctest::Approx(1.0));
    CHECK(w.Q(1, 0) == doctest::Approx(2.0));
    CHECK(w.Q(1, 1) == doctest::Approx(3.0));
    CHECK(w.max_abs_error <= 1e-12);
}

TEST_CASE("wronskian_factor_check: repeated points keep the factorization, kill det") {
    const auto basis = enumerate_basis(1, 2);
    MultiPoly p(basis, {0.0}, {1.0, -2.0, 0.5});
    const auto w = wronskian_factor_check(p, {{1.5}, {1.5}, {2.5}});
    CHECK(w.max_abs_error <= 1e-10);
    CHECK(std::abs(w.Q.determinant()) <= 1e-12);
    CHECK(std::abs(w.lhs.determinant()) <= 1e-10);
}

TEST_CASE("wronskian_factor_check: diagonal carries factorial times coefficient") {
    // univariate: diagonal entry k is (k-1)! * alpha_{k-1}
    const auto basis = enumerate_basis(1, 3);
    MultiPoly p(basis, {0.0}, {2.0, -1.0, 3.0, 0.75});
    const auto w = wronskian_factor_check(p, {{1.0}, {2.0}, {3.0}, {4.0}});
    double fact = 1.0;
    for (int k = 0; k <= 3; ++k) {
        if (k > 0) fact *= k;
        CHECK(w.M_prime(k, k) == doctest::Approx(fact * p.coeffs[static_cast<std::size_t>(k)]));
    }
}

TEST_CASE("wronskian_factor_check: random instances, upper triangularity, dets") {
    Rng rng(1234);
    int done = 0;
    for (int n = 1; n <= 3; ++n) {
        for (int d = 1; d <= 3; ++d) {
            const auto basis = enumerate_basis(n, d);
            const std::size_t N = basis.size();
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<double> coeffs(N);
                for (auto& c : coeffs) {
                    c = rng.normal();
                    if (std::abs(c) < 1e-3) c = c < 0 ? c - 1e-3 : c + 1e-3;
                }
                MultiPoly p(basis, std::vector<double>(static_cast<std::size_t>(n), 0.0), coeffs);
                std::vector<std::vector<double>> pts(N, std::vector<double>(static_cast<std::size_t>(n)));
                for (auto& q : pts)
                    for (double& v : q) v = rng.uniform(-2.0, 2.0);
                const auto w = wronskian_factor_check(p, pts);
                const double mat_scale = w.lhs.cwiseAbs().maxCoeff();
                CHECK(w.max_abs_error <= 1e-8 * std::max(mat_scale, 1.0));
                for (std::size_t i = 0; i < N; ++i) {
                    for (std::size_t j = 0; j < i; ++j) {
                        CHECK(w.M_prime(static_cast<Eigen::Index>(i),
                                        static_cast<Eigen::Index>(j)) == 0.0);
                    }
                    const MultiIndex& lam = basis.exponents(i);
                    double fact = 1.0;
                    for (int e : lam)
                        for (int q = 2; q <= e; ++q) fact *= q;
                    CHECK(w.M_prime(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) ==
                          doctest::Approx(fact * p.coeffs[i]).epsilon(1e-12));
                }
                ++done;
            }
        }
    }
    CHECK(done == 72);
}

TEST_CASE("wronskian_factor_check rejects zero coefficients") {
    const auto basis = enumerate_basis(1, 1);
    MultiPoly p(basis, {0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(wronskian_factor_check(p, {{1.0}, {2.0}}), std::invalid_argument);
}

TEST_CASE("shifted univariate polynomials: independence iff distinct scales") {
    // functions x -> p(a_j x) for p with all-non-zero coefficients; Gram-matrix
    // rank over grid samples is the independence oracle.
    const int d = 3;
    const auto basis = enumerate_basis(1, d);
    const std::vector<double> pc{0.5, -1.0, 2.0, 1.5};
    auto sample_rank = [&](const std::vector<double>& scales) {
        const int P = 41;
        Eigen::MatrixXd S(P, d + 1);
        for (int i = 0; i < P; ++i) {
            const double x = -1.0 + 2.0 * i / (P - 1);
            for (int j = 0; j <= d; ++j) {
                const double ax = scales[static_cast<std::size_t>(j)] * x;
                S(i, j) = pc[0] + ax * (pc[1] + ax * (pc[2] + ax * pc[3]));
            }
        }
        return Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(S).rank();
    };
    CHECK(sample_rank({0.5, 1.0, 1.5, 2.0}) == d + 1);
    CHECK(sample_rank({0.5, 1.0, 1.0, 2.0}) < d + 1);

    // matches the Wronskian route: distinct scales give nonsingular M(1)
    MultiPoly p(basis, {0.0}, pc);
    const auto w_ok = wronskian_factor_check(p, {{0.5}, {1.0}, {1.5}, {2.0}});
    CHECK(std::abs(w_ok.lhs.determinant()) > 1e-6);
    const auto w_bad = wronskian_factor_check(p, {{0.5}, {1.0}, {1.0}, {2.0}});
    CHECK(std::abs(w_bad.lhs.determinant()) <= 1e-8);
}

TEST_CASE("solve_coefficients") {
    SUBCASE("identity") {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
        Eigen::MatrixXd B = Eigen::MatrixXd::Random(4, 2);
        const auto rep = solve_coefficients(A, B);
        CHECK((rep.solution - B).norm() <= 1e-14);
        CHECK(rep.residual_norm <= 1e-14);
        CHECK(rep.condition_estimate >= 1.0);
    }
    SUBCASE("Vandermonde recovery of a known quadratic") {
        const auto basis = enumerate_basis(1, 2);
        const auto Q = build_vandermonde({{1.0}, {2.0}, {3.0}}, basis);
        Eigen::MatrixXd A = Q.matrix.transpose();  // values of monomials per point
        const std::vector<double> truth{0.5, -2.0, 0.75};  // 0.5 - 2x + 0.75 x^2
        Eigen::MatrixXd B(3, 1);
        for (int i = 0; i < 3; ++i) {
            const double x = 1.0 + i;
            B(i, 0) = truth[0] + truth[1] * x + truth[2] * x * x;
        }
        const auto rep = solve_coefficients(A, B);
        for (int i = 0; i < 3; ++i)
            CHECK(rep.solution(i, 0) ==
                  doctest::Approx(truth[static_cast<std::size_t>(i)]).epsilon(1e-10));
    }
    SUBCASE("singular matrix raises") {
        const auto basis = enumerate_basis(1, 2);
        const auto Q = build_vandermonde({{1.0}, {2.0}, {2.0}}, basis);
        Eigen::MatrixXd B = Eigen::MatrixXd::Ones(3, 1);
        CHECK_THROWS_AS(solve_coefficients(Q.matrix, B), std::runtime_error);
    }
}
