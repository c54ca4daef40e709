#include "polynet/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace polynet {

namespace {

double eval_coeffs(const MonomialBasis& basis, const std::vector<double>& coeffs,
                   const std::vector<double>& u) {
    long double acc = 0.0L;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        acc += static_cast<long double>(coeffs[k]) * basis.eval_monomial(k, u);
    }
    return static_cast<double>(acc);
}

double monomial_power(const std::vector<double>& w, const MultiIndex& lam) {
    double v = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (int e = 0; e < lam[i]; ++e) v *= w[i];
    }
    return v;
}

}  // namespace

GeneralizedVandermonde build_vandermonde(const std::vector<std::vector<double>>& points,
                                         const MonomialBasis& basis) {
    const std::size_t N = basis.size();
    if (points.size() != N)
        throw std::invalid_argument("build_vandermonde: need C(n+d,d) points");
    for (const auto& p : points) {
        if (p.size() != static_cast<std::size_t>(basis.dimension()))
            throw std::invalid_argument("build_vandermonde: point dimension mismatch");
    }
    GeneralizedVandermonde out;
    out.basis = basis;
    out.points = points;
    out.matrix.resize(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
            out.matrix(i, j) = basis.eval_monomial(i, points[j]);
        }
    }
    return out;
}

NonsingularityCheck is_nonsingular(const Eigen::MatrixXd& Q, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("is_nonsingular: tol must be > 0");
    NonsingularityCheck out;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(Q);
    const auto& sv = svd.singularValues();
    out.matrix_norm = sv.size() ? sv(0) : 0.0;
    out.smallest_singular = sv.size() ? sv(sv.size() - 1) : 0.0;
    out.margin = out.matrix_norm > 0.0 ? out.smallest_singular / out.matrix_norm : 0.0;
    out.nonsingular = out.smallest_singular > tol * out.matrix_norm && out.matrix_norm > 0.0;
    return out;
}

NonsingularityCheck is_nonsingular(const GeneralizedVandermonde& Q, double tol) {
    return is_nonsingular(Q.matrix, tol);
}

std::vector<std::vector<double>> schur_seed_points(int n, int d,
                                                   const std::vector<double>& base) {
    const std::size_t N = basis_size(n, d);
    if (base.size() != N)
        throw std::invalid_argument("schur_seed_points: need C(n+d,d) base values");
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (!(base[i] > 0.0))
            throw std::invalid_argument("schur_seed_points: base values must be positive");
        for (std::size_t j = i + 1; j < base.size(); ++j) {
            if (base[i] == base[j])
                throw std::invalid_argument("schur_seed_points: base values must be distinct");
        }
    }
    std::vector<std::vector<double>> pts(N, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t j = 0; j < N; ++j) {
        double expnt = 1.0;  // (d+1)^(i-1)
        for (int i = 0; i < n; ++i) {
            pts[j][static_cast<std::size_t>(i)] = std::pow(base[j], expnt);
            expnt *= static_cast<double>(d + 1);
        }
    }
    return pts;
}

WronskianFactorization wronskian_factor_check(const MultiPoly& p,
                                              const std::vector<std::vector<double>>& points) {
    const MonomialBasis& basis = p.basis;
    const std::size_t N = basis.size();
    if (points.size() != N)
        throw std::invalid_argument("wronskian_factor_check: need C(n+d,d) points");
    for (double c : p.coeffs) {
        if (c == 0.0)
            throw std::invalid_argument(
                "wronskian_factor_check: polynomial must have all-non-zero coefficients");
    }

    // Partial derivatives D_{lam_i} p, one coefficient vector per basis index.
    std::vector<std::vector<double>> deriv(N);
    for (std::size_t i = 0; i < N; ++i) {
        deriv[i] = differentiate_multi(basis, p.coeffs, basis.exponents(i));
    }

    WronskianFactorization out;
    out.lhs.resize(N, N);
    out.M_prime.setZero(N, N);
    out.Q.resize(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        const MultiIndex& lam_i = basis.exponents(i);
        for (std::size_t j = 0; j < N; ++j) {
            out.lhs(i, j) = monomial_power(points[j], lam_i) *
                            eval_coeffs(basis, deriv[i], points[j]);
            out.Q(i, j) = basis.eval_monomial(i, points[j]);
            // M'(i,j) = coefficient of x^(lam_j - lam_i) in D_{lam_i} p
            MultiIndex diff = basis.exponents(j);
            bool in_lambda = true;
            for (int t = 0; t < basis.dimension(); ++t) {
                diff[t] -= lam_i[t];
                if (diff[t] < 0) in_lambda = false;
            }
            if (!in_lambda) continue;
            if (auto pos = basis.position(diff)) out.M_prime(i, j) = deriv[i][*pos];
        }
    }
    out.max_abs_error = (out.lhs - out.M_prime * out.Q).cwiseAbs().maxCoeff();
    return out;
}

LinearSolveReport solve_coefficients(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() != A.cols()) throw std::invalid_argument("solve_coefficients: A must be square");
    if (B.rows() != A.rows()) throw std::invalid_argument("solve_coefficients: row count mismatch");
    const Eigen::Index N = A.rows();

    // Row equilibration keeps graded systems (rows spanning many magnitudes)
    // solvable; the reported residual is for the original system.
    Eigen::VectorXd rs(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const double m = A.row(i).cwiseAbs().maxCoeff();
        rs(i) = m > 0.0 ? 1.0 / m : 1.0;
    }
    const Eigen::MatrixXd As = rs.asDiagonal() * A;
    const Eigen::MatrixXd Bs = rs.asDiagonal() * B;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(As);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin > smax * static_cast<double>(N) * 1e-16) || smax == 0.0)
        throw std::runtime_error("solve_coefficients: matrix singular to working precision");

    LinearSolveReport rep;
    rep.condition_estimate = smax / smin;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    rep.solution = qr.solve(Bs);
    rep.residual_norm = (A * rep.solution - B).norm();
    return rep;
}

}  // namespace polynet
