#pragma once

#include <functional>
#include <vector>

#include "polynet/activation.hpp"
#include "polynet/verify.hpp"

namespace polynet {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double y) const { return lo <= y && y <= hi; }
};

/// Best degree-<=d polynomial approximant to sigma on an interval, computed by
/// discrete Remez exchange on a Chebyshev-distributed grid, with the
/// equioscillation certificate.
struct MinimaxResult {
    Interval interval;
    int degree = 0;
    std::vector<double> approximant;        // monomial coefficients, raw variable
    double error = 0.0;                     // certified discrete E_d
    std::vector<double> alternation_points; // d+2 points, ascending
    int sign = 1;                           // residual sign at alternation_points[0]

    // sigma is a degree-<=d polynomial on Y to working precision
    // (E_d <= 1e-8 * sigma_scale); refinement is skipped in that case.
    bool effectively_polynomial = false;
    double sigma_scale = 0.0;               // max |sigma| over the grid
    std::size_t grid_points = 0;            // final grid size used

    // Chebyshev coefficients of the approximant on `interval`. This is the
    // numerically stable representation; `approximant` is derived from it.
    std::vector<double> cheb;

    double eval(double y) const;
    /// Local monomial coefficients of the approximant around y0 (length
    /// degree+1), computed from the Chebyshev form.
    std::vector<double> taylor_at(double y0) const;
};

/// grid_size defaults to 10*(d+2) when 0. The grid is refined until the
/// sup-error over a 4x finer grid exceeds the discrete E_d by less than
/// relative 1e-6 (with a small absolute floor for vanishing E_d).
MinimaxResult best_approximant(const ActivationSpec& sigma, Interval Y, int d,
                               std::size_t grid_size = 0);

/// Jackson's bound 6 * omega_f(r / 2d), given the modulus value.
double jackson_bound(double omega_value);

/// Lower estimate of the modulus of continuity: max |f(x)-f(y)| over grid
/// pairs with ||x-y||_2 <= delta.
double estimate_modulus(const std::function<double(const std::vector<double>&)>& f,
                        const GridSpec& grid, double delta);

/// Smallest d >= 2 with modulus estimate omega(D/2d) < eps/6 for every output
/// coordinate, D = diameter of the grid box. Throws when the cap is exceeded.
/// Each probed d re-tabulates on a grid fine enough for spacing <= delta/4.
int d_epsilon(const VectorFn& f, const std::vector<double>& lo,
              const std::vector<double>& hi, double eps, int cap = 512);

struct CrossingCheck {
    double ratio = 0.0;     // min(|y-lo|,|y-hi|) / |hi-lo|
    double crossing = 0.0;  // located sign change of sigma - p
    double threshold = 0.0; // 1/(d+2)
    bool passes = false;    // ratio > threshold
};

/// Locates a sign change of sigma - p between alternation points a1 and a2 by
/// bisection (abs tol 1e-12) and reports its normalized distance to the
/// interval ends. Throws if the certificate does not alternate there.
CrossingCheck alternation_ratio_check(const ActivationSpec& sigma,
                                      const MinimaxResult& res);

/// Crossings from every adjacent alternation gap (the certificate alternates
/// in each of the d+1 gaps). Used by the constructor's candidate scan.
std::vector<CrossingCheck> all_gap_crossings(const ActivationSpec& sigma,
                                             const MinimaxResult& res);

/// E_d(sigma|Y_k) / (|Y_k|)^(1+gamma) per interval. Diagnostic for the decay
/// of the best-approximation error against the scale growth.
std::vector<double> approx_growth_diagnostic(const ActivationSpec& sigma,
                                             const std::vector<Interval>& intervals,
                                             int d, double gamma);

}  // namespace polynet
