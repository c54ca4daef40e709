#pragma once

#include <map>
#include <optional>
#include <vector>

namespace polynet {

/// Exponent tuple (a1,...,an) of a multivariate monomial x1^a1 ... xn^an.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);

/// Colexicographic comparison: a < b iff a[i] < b[i] at the largest index i
/// where they differ.
bool colex_less(const MultiIndex& a, const MultiIndex& b);

/// All exponent tuples of total degree <= d in n variables, sorted in
/// colexicographic order. Position 0 is the zero tuple (constant monomial).
class MonomialBasis {
public:
    MonomialBasis() = default;
    MonomialBasis(int n, int d);

    int dimension() const { return n_; }
    int max_degree() const { return d_; }
    std::size_t size() const { return indices_.size(); }
    const MultiIndex& exponents(std::size_t k) const { return indices_[k]; }
    const std::vector<MultiIndex>& all() const { return indices_; }

    /// Position of an exponent tuple in the colex order, if it belongs here.
    std::optional<std::size_t> position(const MultiIndex& a) const;

    /// Value of the k-th monomial at a point u (length n).
    double eval_monomial(std::size_t k, const std::vector<double>& u) const;

    bool operator==(const MonomialBasis& other) const {
        return n_ == other.n_ && d_ == other.d_;
    }

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<MultiIndex> indices_;
    std::map<MultiIndex, std::size_t> lookup_;
};

/// C(n+d, d) without intermediate overflow at desk scale.
std::size_t basis_size(int n, int d);

/// Throws std::invalid_argument for n < 1 or d < 0.
MonomialBasis enumerate_basis(int n, int d);

/// Polynomial sum_k coeffs[k] * q_k(x - center) over a colex monomial basis.
struct MultiPoly {
    MonomialBasis basis;
    std::vector<double> center;  // x0, length n
    std::vector<double> coeffs;  // length basis.size()

    MultiPoly() = default;
    MultiPoly(MonomialBasis b, std::vector<double> x0, std::vector<double> v);

    double eval(const std::vector<double>& x) const;

    /// Largest total degree carried by a coefficient with |c| > tol.
    int effective_degree(double tol = 0.0) const;
};

/// Same polynomial expressed around a new center. Evaluation is preserved.
MultiPoly recenter(const MultiPoly& p, const std::vector<double>& new_center);

/// Coefficient vector of (c0 + c.u) * p, in the same basis. Throws if the
/// product's degree would exceed the basis degree.
std::vector<double> multiply_linear(const MonomialBasis& basis,
                                    const std::vector<double>& coeffs,
                                    double c0, const std::vector<double>& c);

/// Coefficient vector of the partial derivative d/du_t of p.
std::vector<double> differentiate(const MonomialBasis& basis,
                                  const std::vector<double>& coeffs, int t);

/// Mixed partial (d/du_1)^{lam_1} ... (d/du_n)^{lam_n} applied to p.
std::vector<double> differentiate_multi(const MonomialBasis& basis,
                                        const std::vector<double>& coeffs,
                                        const MultiIndex& lam);

/// Expand a univariate polynomial sum_r uni[r] * t^r composed with the affine
/// form t = w.u + y0 into the colex basis (in the shifted variable u).
/// Requires uni.size() - 1 <= basis.max_degree().
std::vector<double> compose_affine(const MonomialBasis& basis,
                                   const std::vector<double>& uni,
                                   const std::vector<double>& w, double y0);

}  // namespace polynet
