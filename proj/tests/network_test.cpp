#include <doctest.h>

#include <cmath>

#include "polynet/network.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

namespace {
const ActivationSpec kTanh = ActivationSpec::builtin(ActivationSpec::Kind::Tanh);
const ActivationSpec kLogistic = ActivationSpec::builtin(ActivationSpec::Kind::Logistic);

NetworkWeights random_network(Rng& rng, int n, int N, int m) {
    NetworkWeights w;
    w.W1.resize(n + 1, N);
    w.W2.resize(N + 1, m);
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c < N; ++c) w.W1(r, c) = rng.normal();
    for (int r = 0; r <= N; ++r)
        for (int c = 0; c < m; ++c) w.W2(r, c) = rng.normal();
    return w;
}
}  // namespace

TEST_CASE("forward basics") {
    SUBCASE("all-zero weights with sigma(0) = 0") {
        NetworkWeights w;
        w.W1.setZero(2, 3);
        w.W2.setZero(4, 2);
        const auto out = forward(w, kTanh, {0.7});
        CHECK(out[0] == 0.0);
        CHECK(out[1] == 0.0);
    }
    SUBCASE("identity wiring computes sigma(x)") {
        NetworkWeights w;
        w.W1.resize(2, 1);
        w.W1 << 0.0, 1.0;
        w.W2.resize(2, 1);
        w.W2 << 0.0, 1.0;
        for (double x : {-1.2, 0.0, 0.4, 2.5}) {
            CHECK(forward(w, kTanh, {x})[0] == doctest::Approx(std::tanh(x)).epsilon(1e-15));
        }
    }
    SUBCASE("two identity-table units combine to the identity map") {
        // hand expansion: 2 sigma(x) - (1/2) sigma(2x) = x when sigma(y) = y
        std::vector<std::pair<double, double>> samples;
        for (int i = 0; i <= 16; ++i) {
            const double y = -8.0 + i;
            samples.emplace_back(y, y);
        }
        const auto ident = ActivationSpec::table(samples);
        NetworkWeights w;
        w.W1.resize(2, 2);
        w.W1 << 0.0, 0.0, 1.0, 2.0;
        w.W2.resize(3, 1);
        w.W2 << 0.0, 2.0, -0.5;
        for (double x : {-1.5, -0.25, 0.0, 0.8, 2.0}) {
            CHECK(forward(w, ident, {x})[0] == doctest::Approx(x).epsilon(1e-14).scale(1.0));
        }
    }
    SUBCASE("dimension mismatch rejected") {
        NetworkWeights w;
        w.W1.setZero(3, 2);
        w.W2.setZero(3, 1);
        CHECK_THROWS_AS(forward(w, kTanh, {1.0}), std::invalid_argument);
    }
}

TEST_CASE("forward is affine in W2 for fixed first layer") {
    Rng rng(5);
    const auto a = random_network(rng, 2, 4, 3);
    NetworkWeights b = a;
    for (int r = 0; r <= 4; ++r)
        for (int c = 0; c < 3; ++c) b.W2(r, c) = rng.normal();
    const double alpha = 0.75, beta = -1.25;
    NetworkWeights mix = a;
    mix.W2 = alpha * a.W2 + beta * b.W2;
    for (int rep = 0; rep < 25; ++rep) {
        const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const auto fa = forward(a, kTanh, x);
        const auto fb = forward(b, kTanh, x);
        const auto fm = forward(mix, kTanh, x);
        for (int t = 0; t < 3; ++t) {
            const double expect = alpha * fa[static_cast<std::size_t>(t)] +
                                  beta * fb[static_cast<std::size_t>(t)];
            CHECK(fm[static_cast<std::size_t>(t)] ==
                  doctest::Approx(expect).epsilon(1e-12).scale(std::max(1.0, std::abs(expect))));
        }
    }
}

TEST_CASE("eliminate_output_bias") {
    SUBCASE("paper constant: bias 3 with sigma(y0) = 0.5 gives new weight 6") {
        // logistic(0) = 0.5
        NetworkWeights w;
        w.W1.setZero(2, 1);
        w.W1(1, 0) = 1.0;
        w.W2.resize(2, 1);
        w.W2 << 3.0, 0.25;
        const auto e = eliminate_output_bias(w, kLogistic, 0.0);
        CHECK(e.hidden_units() == 2);
        CHECK(e.W2(0, 0) == 0.0);
        CHECK(e.W2(2, 0) == doctest::Approx(6.0));
        CHECK(e.W1(0, 1) == 0.0);          // appended unit bias y0
        CHECK(e.direction(1).norm() == 0.0);  // zero direction
    }
    SUBCASE("zero output bias appends a zero-weight unit and preserves forward") {
        Rng rng(11);
        auto w = random_network(rng, 2, 3, 2);
        w.W2.row(0).setZero();
        const auto e = eliminate_output_bias(w, kTanh, 1.0);
        CHECK(e.W2(4, 0) == 0.0);
        CHECK(e.W2(4, 1) == 0.0);
        const std::vector<double> x{0.3, -0.8};
        const auto f0 = forward(w, kTanh, x);
        const auto f1 = forward(e, kTanh, x);
        CHECK(f0[0] == doctest::Approx(f1[0]).epsilon(1e-15));
    }
    SUBCASE("sigma(y0) too small is rejected") {
        Rng rng(2);
        const auto w = random_network(rng, 1, 2, 1);
        CHECK_THROWS_AS(eliminate_output_bias(w, kTanh, 0.0), std::invalid_argument);
    }
    SUBCASE("property: forward preserved on random networks and grids") {
        Rng rng(77);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 1 + static_cast<int>(rng.next_u64() % 3);
            const int N = 1 + static_cast<int>(rng.next_u64() % 5);
            const int m = 1 + static_cast<int>(rng.next_u64() % 3);
            const auto w = random_network(rng, n, N, m);
            const double y0 = rng.uniform(0.5, 2.0);
            const auto e = eliminate_output_bias(w, kTanh, y0);
            CHECK(e.hidden_units() == N + 1);
            for (int t = 0; t < m; ++t) CHECK(e.W2(0, t) == 0.0);
            double scale = 1.0;
            for (int r = 0; r <= N; ++r)
                for (int c = 0; c < m; ++c) scale = std::max(scale, std::abs(w.W2(r, c)));
            for (int pt = 0; pt < 50; ++pt) {
                std::vector<double> x(static_cast<std::size_t>(n));
                for (auto& xi : x) xi = rng.uniform(-2.0, 2.0);
                const auto f0 = forward(w, kTanh, x);
                const auto f1 = forward(e, kTanh, x);
                for (int t = 0; t < m; ++t) {
                    CHECK(std::abs(f0[static_cast<std::size_t>(t)] -
                                   f1[static_cast<std::size_t>(t)]) <= 1e-12 * scale);
                }
            }
        }
    }
}

TEST_CASE("constraint accessors") {
    NetworkWeights w;
    w.W1.resize(3, 2);
    w.W1 << 5.0, -7.0, 3.0, 0.0, 4.0, 1.0;  // biases 5,-7; directions (3,4), (0,1)
    w.W2.resize(3, 1);
    w.W2 << 100.0, -0.25, 0.125;  // bias excluded from the max
    CHECK(w.max_nonbias_output_weight() == doctest::Approx(0.25));
    CHECK(w.min_direction_norm() == doctest::Approx(1.0));
    CHECK(w.direction(0).norm() == doctest::Approx(5.0));
}

TEST_CASE("JSON round-trip is exact") {
    Rng rng(99);
    const auto w = random_network(rng, 3, 4, 2);
    const std::string text = to_json(w, "tanh");
    std::string kind;
    const auto back = from_json(text, &kind);
    CHECK(kind == "tanh");
    CHECK(back.W1 == w.W1);
    CHECK(back.W2 == w.W2);

    // tampered version is rejected
    std::string bad = text;
    bad.replace(bad.find("\"version\": 1"), 12, "\"version\": 9");
    CHECK_THROWS(from_json(bad));
}
