#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polynet/activation.hpp"
#include "polynet/minimax.hpp"
#include "polynet/monomials.hpp"
#include "polynet/network.hpp"
#include "polynet/verify.hpp"

namespace polynet {

/// Divergent increasing interval lengths lambda_k = lambda0 * growth^k with
/// nested intervals Y_k centered (as far as nesting allows) on the working
/// crossing point.
struct ScaleSchedule {
    double lambda0 = 1.0;
    double growth = 2.0;
    int max_k = 40;

    double lambda(int k) const;
    /// Smallest interval of length `len` containing `prev` whose center is as
    /// close as possible to `desired_center`.
    static Interval nested(Interval prev, double len, double desired_center);
    /// Interval chain centered at center0 (diagnostics use; the constructor
    /// re-centers on accepted crossings as it goes).
    std::vector<Interval> intervals(double center0, int count) const;
};

struct BoxDomain {
    std::vector<double> lo, hi;
    std::vector<double> anchor;  // empty: box center

    std::vector<double> anchor_point() const;
    double radius() const;  // r_X(x0) = max ||x - x0|| over the box corners
    void validate() const;
};

struct ConstructionRequest {
    // Exactly one of the two targets is set. Polynomial targets share one
    // basis; one entry per output coordinate.
    std::vector<MultiPoly> poly_target;
    VectorFn continuous_target;
    int output_dim = 1;  // continuous path only (poly path: poly_target.size())

    BoxDomain domain;
    ActivationSpec sigma = ActivationSpec::builtin(ActivationSpec::Kind::Tanh);
    double eps = 1e-2;

    std::optional<double> small_output_weights;  // lambda: max non-bias |W2| < lambda
    std::optional<double> large_input_norms;     // lambda': min ||w_j|| > lambda'
    struct FrozenFirstLayer {
        double lambda = 1.0;
        std::uint64_t seed = 0;
    };
    std::optional<FrozenFirstLayer> frozen_random_first_layer;

    ScaleSchedule schedule;
    std::uint64_t seed = 0;
    std::size_t grid_cap = 10'000'000;
    std::size_t min_points_per_axis = 33;
};

struct ConstructionReport {
    bool success = false;
    std::string failure_reason;
    bool singular_draw = false;  // random-features path: drawn Vandermonde singular

    NetworkWeights weights;
    std::string sigma_kind;

    std::vector<double> certified_error;  // per output: grid sup + slack
    std::vector<double> grid_sup;
    double lipschitz_slack = 0.0;
    std::size_t verification_points = 0;

    int scale_index_used = -1;
    double lambda0_used = 0.0;
    Interval interval_used;
    double crossing = 0.0;
    double alternation_ratio = 0.0;
    double minimax_error = 0.0;  // E_d(sigma | Y_k)
    bool jitter_applied = false;

    double vandermonde_condition = 0.0;   // solve condition estimate
    double vandermonde_margin = 0.0;      // direction Vandermonde sigma_min/sigma_max
    std::vector<double> coefficient_norm; // sum_j |a_j| per output
    double zero_sum_defect = 0.0;         // max_t |sum_j a_jt| / ||a_t||_1
    double error_bound_rhs = 0.0;         // sum_j |a_j| * ||g_j - ghat_j|| + surrogate
    double constraint_max_output_weight = 0.0;
    double constraint_min_direction_norm = 0.0;

    int effective_degree = 0;
    int padded_units = 0;

    // continuous path
    int d_eps = 0;
    double surrogate_error = 0.0;        // certified eps_1
    std::vector<double> modulus_table;   // omega(D/2d), d = 2..d_eps

    std::string to_csv() const;
};

/// Theorem-1 path: exactly C(n+d,d) hidden units for a degree-<=d polynomial
/// target, certified sup-error < eps.
ConstructionReport construct_polynomial(const ConstructionRequest& req);

/// Theorem-2 path: modulus search for d_eps, polynomial surrogate by least
/// squares, then the polynomial path on the remaining budget. The emitted
/// network has C(n+d_eps, d_eps) hidden units.
ConstructionReport construct_continuous(const ConstructionRequest& req);

/// Theorem-3 path: first-layer directions drawn once (unit direction, radius
/// uniform on (lambda, 2*lambda]) and frozen; only biases and the second
/// layer are solved. A singular drawn Vandermonde is reported, not retried.
ConstructionReport construct_random_features(const ConstructionRequest& req);

/// Height of the simplex spanned by the points w.r.t. the given apex, by the
/// Cayley-Menger determinant ratio h^2 = -det(M) / (2 det(M')).
double simplex_height_diagnostic(const std::vector<std::vector<double>>& points,
                                 std::size_t apex_index);

struct BarycentricRow {
    int k = 0;
    bool degenerate = false;
    double spread_f = 0.0;     // max_j |b_j - 1/N| for nu_hat(f)
    double spread_zero = 0.0;  // same for 0_{N-1}
    double max_coord_diff = 0.0;  // max_j |b_j - b'_j|
    double c_f = 0.0;
    double height_max = 0.0;
    double height_min = 0.0;
    bool bound_ok = false;  // |b_j - b'_j| <= c_f / h_j per apex
};

/// Recomputes the barycentric (affine) coordinates of nu_hat(f) and 0 w.r.t.
/// the simplex of nu_hat(ghat_j) along the schedule.
std::vector<BarycentricRow> barycentric_diagnostic(const ConstructionRequest& req,
                                                   const std::vector<int>& k_range);

}  // namespace polynet
