// Test-only oracles, independent of the library's implementation paths.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

struct RemezOracle {
    std::vector<double> coeffs;  // monomial
    double error = 0.0;
};

// Naive discrete Remez with single-point exchange on a uniform grid, solving
// the alternation system in the plain monomial basis. Deliberately simple and
// separate from the library's Chebyshev-basis multi-exchange.
inline RemezOracle naive_remez(const std::function<double(double)>& f, double lo, double hi,
                               int d, std::size_t grid = 100001) {
    std::vector<double> xs(grid), fv(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
        fv[i] = f(xs[i]);
    }
    const int m = d + 2;
    std::vector<std::size_t> ref(m);
    for (int k = 0; k < m; ++k) ref[k] = (static_cast<std::size_t>(k) * (grid - 1)) / (m - 1);

    RemezOracle out;
    for (int iter = 0; iter < 500; ++iter) {
        Eigen::MatrixXd A(m, m);
        Eigen::VectorXd b(m);
        for (int j = 0; j < m; ++j) {
            double p = 1.0;
            for (int k = 0; k <= d; ++k) {
                A(j, k) = p;
                p *= xs[ref[j]];
            }
            A(j, m - 1) = (j % 2 == 0) ? 1.0 : -1.0;
            b(j) = fv[ref[j]];
        }
        Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
        out.coeffs.assign(sol.data(), sol.data() + d + 1);
        const double E = sol(m - 1);

        auto presid = [&](std::size_t i) {
            double p = 0.0;
            for (int k = d; k >= 0; --k) p = p * xs[i] + out.coeffs[k];
            return fv[i] - p;
        };
        std::size_t worst = 0;
        double worst_abs = 0.0;
        for (std::size_t i = 0; i < grid; ++i) {
            const double r = std::abs(presid(i));
            if (r > worst_abs) {
                worst_abs = r;
                worst = i;
            }
        }
        out.error = std::abs(E);
        if (worst_abs <= std::abs(E) * (1.0 + 1e-12) + 1e-300) break;

        // single-point exchange preserving alternation
        const double rw = presid(worst);
        bool placed = false;
        for (int j = 0; j < m; ++j) {
            if (worst == ref[j]) {
                placed = true;
                break;
            }
        }
        if (placed) break;
        if (worst < ref.front()) {
            if ((presid(ref.front()) > 0) == (rw > 0)) ref.front() = worst;
            else {
                for (int j = m - 1; j > 0; --j) ref[j] = ref[j - 1];
                ref.front() = worst;
            }
        } else if (worst > ref.back()) {
            if ((presid(ref.back()) > 0) == (rw > 0)) ref.back() = worst;
            else {
                for (int j = 0; j + 1 < m; ++j) ref[j] = ref[j + 1];
                ref.back() = worst;
            }
        } else {
            for (int j = 0; j + 1 < m; ++j) {
                if (ref[j] < worst && worst < ref[j + 1]) {
                    if ((presid(ref[j]) > 0) == (rw > 0)) ref[j] = worst;
                    else ref[j + 1] = worst;
                    break;
                }
            }
        }
    }
    return out;
}

// Closed-form best linear approximant error for a convex differentiable f.
inline double convex_linear_minimax_error(const std::function<double(double)>& f,
                                          const std::function<double(double)>& fprime,
                                          double a, double b) {
    const double s = (f(b) - f(a)) / (b - a);
    // solve f'(xi) = s by bisection
    double lo = a, hi = b;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fprime(mid) < s) lo = mid;
        else hi = mid;
    }
    const double xi = 0.5 * (lo + hi);
    return 0.5 * (f(a) - s * a - (f(xi) - s * xi));
}

// Dense pairwise brute-force modulus of continuity on a uniform 1-D grid.
inline double brute_modulus_1d(const std::function<double(double)>& f, double lo, double hi,
                               double delta, std::size_t grid = 10000) {
    std::vector<double> xs(grid), fv(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
        fv[i] = f(xs[i]);
    }
    double best = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
        for (std::size_t j = i + 1; j < grid && xs[j] - xs[i] <= delta; ++j) {
            best = std::max(best, std::abs(fv[i] - fv[j]));
        }
    }
    return best;
}

// Binomial coefficients by Pascal's rule (independent of basis_size).
inline unsigned long long binom(int n, int k) {
    if (k < 0 || k > n) return 0ull;
    std::vector<unsigned long long> row(static_cast<std::size_t>(n) + 1, 0ull);
    row[0] = 1ull;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    }
    return row[static_cast<std::size_t>(k)];
}

}  // namespace oracles
