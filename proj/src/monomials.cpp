#include "polynet/monomials.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace polynet {

int total_degree(const MultiIndex& a) {
    int s = 0;
    for (int e : a) s += e;
    return s;
}

bool colex_less(const MultiIndex& a, const MultiIndex& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

std::size_t basis_size(int n, int d) {
    // C(n+d, d) via the multiplicative formula.
    std::size_t r = 1;
    for (int i = 1; i <= d; ++i) {
        r = r * static_cast<std::size_t>(n + i) / static_cast<std::size_t>(i);
    }
    return r;
}

namespace {

void enumerate_rec(int n, int budget, MultiIndex& scratch,
                   std::vector<MultiIndex>& out) {
    if (n == 0) {
        out.push_back(scratch);
        return;
    }
    // Last coordinate is the most significant under colex, so it varies
    // slowest: recurse on the first n-1 coordinates for each value of a_n.
    for (int e = 0; e <= budget; ++e) {
        scratch[n - 1] = e;
        enumerate_rec(n - 1, budget - e, scratch, out);
    }
    scratch[n - 1] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
    if (n < 1) throw std::invalid_argument("MonomialBasis: n must be >= 1");
    if (d < 0) throw std::invalid_argument("MonomialBasis: d must be >= 0");
    MultiIndex scratch(static_cast<std::size_t>(n), 0);
    enumerate_rec(n, d, scratch, indices_);
    for (std::size_t k = 0; k < indices_.size(); ++k) lookup_[indices_[k]] = k;
}

std::optional<std::size_t> MonomialBasis::position(const MultiIndex& a) const {
    auto it = lookup_.find(a);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

double MonomialBasis::eval_monomial(std::size_t k,
                                    const std::vector<double>& u) const {
    const MultiIndex& a = indices_[k];
    double v = 1.0;
    for (int i = 0; i < n_; ++i) {
        for (int e = 0; e < a[i]; ++e) v *= u[i];
    }
    return v;
}

MonomialBasis enumerate_basis(int n, int d) { return MonomialBasis(n, d); }

MultiPoly::MultiPoly(MonomialBasis b, std::vector<double> x0,
                     std::vector<double> v)
    : basis(std::move(b)), center(std::move(x0)), coeffs(std::move(v)) {
    if (center.size() != static_cast<std::size_t>(basis.dimension()))
        throw std::invalid_argument("MultiPoly: center dimension mismatch");
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("MultiPoly: coefficient count mismatch");
}

double MultiPoly::eval(const std::vector<double>& x) const {
    if (x.size() != center.size())
        throw std::invalid_argument("MultiPoly::eval: point dimension mismatch");
    const int n = basis.dimension();
    const int d = basis.max_degree();
    // Power table pw[i][e] = (x_i - c_i)^e.
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pw[i].resize(static_cast<std::size_t>(d) + 1);
        pw[i][0] = 1.0;
        const double u = x[i] - center[i];
        for (int e = 1; e <= d; ++e) pw[i][e] = pw[i][e - 1] * u;
    }
    long double acc = 0.0L;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        double m = 1.0;
        const MultiIndex& a = basis.exponents(k);
        for (int i = 0; i < n; ++i) m *= pw[i][a[i]];
        acc += static_cast<long double>(coeffs[k]) * m;
    }
    return static_cast<double>(acc);
}

int MultiPoly::effective_degree(double tol) const {
    int deg = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (std::abs(coeffs[k]) > tol)
            deg = std::max(deg, total_degree(basis.exponents(k)));
    }
    return deg;
}

std::vector<double> multiply_linear(const MonomialBasis& basis,
                                    const std::vector<double>& coeffs,
                                    double c0, const std::vector<double>& c) {
    if (c.size() != static_cast<std::size_t>(basis.dimension()))
        throw std::invalid_argument("multiply_linear: dimension mismatch");
    std::vector<double> out(basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double v = coeffs[k];
        if (v == 0.0) continue;
        if (c0 != 0.0) out[k] += c0 * v;
        MultiIndex a = basis.exponents(k);
        for (int t = 0; t < basis.dimension(); ++t) {
            if (c[t] == 0.0) continue;
            a[t] += 1;
            auto pos = basis.position(a);
            if (!pos)
                throw std::invalid_argument(
                    "multiply_linear: product degree exceeds basis degree");
            out[*pos] += c[t] * v;
            a[t] -= 1;
        }
    }
    return out;
}

std::vector<double> differentiate(const MonomialBasis& basis,
                                  const std::vector<double>& coeffs, int t) {
    std::vector<double> out(basis.size(), 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double v = coeffs[k];
        if (v == 0.0) continue;
        MultiIndex a = basis.exponents(k);
        if (a[t] == 0) continue;
        const int e = a[t];
        a[t] -= 1;
        out[*basis.position(a)] += e * v;
    }
    return out;
}

std::vector<double> differentiate_multi(const MonomialBasis& basis,
                                        const std::vector<double>& coeffs,
                                        const MultiIndex& lam) {
    std::vector<double> cur = coeffs;
    for (int t = 0; t < basis.dimension(); ++t) {
        for (int rep = 0; rep < lam[t]; ++rep) cur = differentiate(basis, cur, t);
    }
    return cur;
}

std::vector<double> compose_affine(const MonomialBasis& basis,
                                   const std::vector<double>& uni,
                                   const std::vector<double>& w, double y0) {
    if (w.size() != static_cast<std::size_t>(basis.dimension()))
        throw std::invalid_argument("compose_affine: dimension mismatch");
    if (static_cast<int>(uni.size()) - 1 > basis.max_degree())
        throw std::invalid_argument("compose_affine: univariate degree too high");
    // Horner in the polynomial ring: p = (((c_d)*t + c_{d-1})*t + ...) with
    // t = y0 + w.u. Each multiply raises the degree by one, so the result
    // stays inside the basis.
    std::vector<double> acc(basis.size(), 0.0);
    if (uni.empty()) return acc;
    acc[0] = uni.back();
    for (std::size_t r = uni.size() - 1; r-- > 0;) {
        acc = multiply_linear(basis, acc, y0, w);
        acc[0] += uni[r];
    }
    return acc;
}

MultiPoly recenter(const MultiPoly& p, const std::vector<double>& new_center) {
    if (new_center.size() != p.center.size())
        throw std::invalid_argument("recenter: dimension mismatch");
    const int n = p.basis.dimension();
    // With u' = x - c', each old monomial (x - c)^a = prod_t (u'_t + delta_t)^{a_t}
    // expands by repeated multiplication with the linear factors.
    std::vector<double> delta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) delta[i] = new_center[i] - p.center[i];

    std::vector<double> out(p.basis.size(), 0.0);
    std::vector<double> e_t(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < p.basis.size(); ++k) {
        const double v = p.coeffs[k];
        if (v == 0.0) continue;
        std::vector<double> term(p.basis.size(), 0.0);
        term[0] = v;
        const MultiIndex& a = p.basis.exponents(k);
        for (int t = 0; t < n; ++t) {
            e_t.assign(static_cast<std::size_t>(n), 0.0);
            e_t[t] = 1.0;
            for (int rep = 0; rep < a[t]; ++rep)
                term = multiply_linear(p.basis, term, delta[t], e_t);
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
    }
    return MultiPoly(p.basis, new_center, std::move(out));
}

}  // namespace polynet
