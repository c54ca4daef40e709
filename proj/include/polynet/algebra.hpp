#pragma once

#include <Eigen/Dense>

#include <vector>

#include "polynet/monomials.hpp"

namespace polynet {

/// Square matrix [q_i(v_j)] of all degree-<=d colex monomials evaluated at
/// C(n+d,d) points.
struct GeneralizedVandermonde {
    MonomialBasis basis;
    std::vector<std::vector<double>> points;
    Eigen::MatrixXd matrix;
};

/// Throws on point count or dimension mismatch.
GeneralizedVandermonde build_vandermonde(const std::vector<std::vector<double>>& points,
                                         const MonomialBasis& basis);

struct NonsingularityCheck {
    bool nonsingular = false;
    double margin = 0.0;        // sigma_min / sigma_max
    double smallest_singular = 0.0;
    double matrix_norm = 0.0;   // sigma_max
};

/// Nonsingular iff the smallest singular value exceeds tol * ||Q||.
NonsingularityCheck is_nonsingular(const GeneralizedVandermonde& Q, double tol = 1e-10);
NonsingularityCheck is_nonsingular(const Eigen::MatrixXd& Q, double tol = 1e-10);

/// Points whose i-th coordinate is base_j^((d+1)^(i-1)). The resulting
/// Vandermonde has rows base_j^(beta_i) for strictly increasing integers
/// beta_i (a Schur-polynomial determinant), hence is nonsingular for distinct
/// positive base values.
std::vector<std::vector<double>> schur_seed_points(int n, int d,
                                                   const std::vector<double>& base);

struct WronskianFactorization {
    Eigen::MatrixXd lhs;      // M(1_n): (i,j) = w_j^{lam_i} (D_{lam_i} p)(w_j)
    Eigen::MatrixXd M_prime;  // upper-triangular coefficient factor
    Eigen::MatrixXd Q;        // generalized Vandermonde of the points
    double max_abs_error = 0.0;  // max |lhs - M_prime * Q|
};

/// Builds the generalized-Wronskian evaluation at the all-ones point for the
/// family x -> p(w_{1,j} x_1, ..., w_{n,j} x_n) and verifies the
/// factorization M(1_n) = M' * Q. p must have exact basis degree and
/// all-non-zero coefficients (the factorization's hypothesis).
WronskianFactorization wronskian_factor_check(const MultiPoly& p,
                                              const std::vector<std::vector<double>>& points);

struct LinearSolveReport {
    Eigen::MatrixXd solution;
    double residual_norm = 0.0;      // ||A*solution - B||_F, a posteriori
    double condition_estimate = 1.0; // of the row-equilibrated system
};

/// Solves A X = B by column-pivoted Householder QR on the row-equilibrated
/// system. Throws std::runtime_error for matrices singular to working
/// precision.
LinearSolveReport solve_coefficients(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace polynet
