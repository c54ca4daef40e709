#include "polynet/minimax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polynet {

namespace {

// Chebyshev-extrema nodes on Y, ascending. g must be even so the midpoint is
// a node (kinks of symmetric activations then sit on the grid).
std::vector<double> cheb_grid(Interval Y, std::size_t g) {
    const double mid = Y.mid(), rad = 0.5 * Y.length();
    std::vector<double> pts(g + 1);
    for (std::size_t j = 0; j <= g; ++j) {
        pts[j] = mid - rad * std::cos(M_PI * static_cast<double>(j) / g);
    }
    pts.front() = Y.lo;
    pts.back() = Y.hi;
    return pts;
}

double clenshaw(const std::vector<double>& c, double s) {
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b = 2.0 * s * b1 - b2 + c[k];
        b2 = b1;
        b1 = b;
    }
    return s * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

// Chebyshev coefficients of the derivative on [-1,1].
std::vector<double> cheb_derivative(const std::vector<double>& a) {
    const std::size_t n = a.size();
    if (n <= 1) return {0.0};
    std::vector<double> b(n, 0.0);
    b[n - 1] = 0.0;
    if (n >= 2) b[n - 2] = 2.0 * static_cast<double>(n - 1) * a[n - 1];
    for (std::size_t k = n - 2; k >= 1; --k) {
        b[k - 1] = (k + 1 < n ? b[k + 1] : 0.0) + 2.0 * static_cast<double>(k) * a[k];
        if (k == 1) break;
    }
    b[0] *= 0.5;
    b.pop_back();
    return b;
}

// Alternating-extrema selection: the largest-|r| point of each sign run,
// trimmed at the ends down to m points.
std::vector<std::size_t> pick_extrema(const std::vector<double>& r, std::size_t m) {
    std::vector<std::size_t> cand;
    int run_sign = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int s = r[i] > 0.0 ? 1 : (r[i] < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (run_sign == 0) {
            run_sign = s;
            best = i;
        } else if (s == run_sign) {
            if (std::abs(r[i]) > std::abs(r[best])) best = i;
        } else {
            cand.push_back(best);
            run_sign = s;
            best = i;
        }
    }
    if (run_sign != 0) cand.push_back(best);
    if (cand.size() < m) return {};
    std::size_t lo = 0, hi = cand.size();
    while (hi - lo > m) {
        if (std::abs(r[cand[lo]]) <= std::abs(r[cand[hi - 1]])) ++lo;
        else --hi;
    }
    return std::vector<std::size_t>(cand.begin() + lo, cand.begin() + hi);
}

struct ExchangeState {
    std::vector<double> cheb;  // approximant coefficients, Chebyshev basis
    double E = 0.0;            // signed equioscillation value
    std::vector<std::size_t> ref;
    double sup = 0.0;          // max |residual| over the grid
    double scale = 0.0;        // max |sigma| over the grid
};

ExchangeState run_exchange(const ActivationSpec& sigma, Interval Y, int d,
                           const std::vector<double>& pts,
                           const std::vector<std::size_t>* warm_ref) {
    const std::size_t g = pts.size() - 1;
    const std::size_t m = static_cast<std::size_t>(d) + 2;
    const double mid = Y.mid(), rad = 0.5 * Y.length();

    std::vector<double> fv(pts.size()), sv(pts.size());
    double scale = 0.0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
        fv[j] = sigma(pts[j]);
        sv[j] = (pts[j] - mid) / rad;
        scale = std::max(scale, std::abs(fv[j]));
    }

    ExchangeState st;
    st.scale = scale;
    if (warm_ref && warm_ref->size() == m) {
        st.ref = *warm_ref;
    } else {
        st.ref.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            st.ref[k] = (k * g) / (m - 1);
        }
    }

    Eigen::MatrixXd A(m, m);
    Eigen::VectorXd rhs(m);
    std::vector<double> resid(pts.size());
    double prev_E = std::numeric_limits<double>::quiet_NaN();

    for (int iter = 0; iter < 100; ++iter) {
        for (std::size_t j = 0; j < m; ++j) {
            const double s = sv[st.ref[j]];
            double t0 = 1.0, t1 = s;
            A(j, 0) = 1.0;
            for (int k = 1; k <= d; ++k) {
                A(j, k) = t1;
                const double t2 = 2.0 * s * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
            A(j, m - 1) = (j % 2 == 0) ? 1.0 : -1.0;
            rhs(j) = fv[st.ref[j]];
        }
        Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
        st.cheb.assign(sol.data(), sol.data() + d + 1);
        st.E = sol(m - 1);

        st.sup = 0.0;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            resid[j] = fv[j] - clenshaw(st.cheb, sv[j]);
            st.sup = std::max(st.sup, std::abs(resid[j]));
        }

        const double lower = std::abs(st.E);
        if (st.sup <= lower * (1.0 + 1e-10) + 1e-15 * scale) break;
        if (!std::isnan(prev_E) &&
            std::abs(lower - std::abs(prev_E)) < 1e-10 * std::max(lower, 1e-300) &&
            st.sup <= lower * (1.0 + 1e-8) + 1e-14 * scale)
            break;
        prev_E = st.E;

        auto next = pick_extrema(resid, m);
        if (next.empty() || next == st.ref) break;
        st.ref = std::move(next);
    }
    return st;
}

}  // namespace

double MinimaxResult::eval(double y) const {
    const double s = (y - interval.mid()) / (0.5 * interval.length());
    return clenshaw(cheb, s);
}

std::vector<double> MinimaxResult::taylor_at(double y0) const {
    const double rad = 0.5 * interval.length();
    const double s0 = (y0 - interval.mid()) / rad;
    std::vector<double> out(static_cast<std::size_t>(degree) + 1, 0.0);
    std::vector<double> cur = cheb;
    double fact = 1.0;
    double chain = 1.0;  // (1/rad)^j
    for (int j = 0; j <= degree; ++j) {
        if (j > 0) {
            cur = cheb_derivative(cur);
            fact *= j;
            chain /= rad;
        }
        out[static_cast<std::size_t>(j)] = clenshaw(cur, s0) * chain / fact;
    }
    return out;
}

MinimaxResult best_approximant(const ActivationSpec& sigma, Interval Y, int d,
                               std::size_t grid_size) {
    if (!(Y.lo < Y.hi)) throw std::invalid_argument("best_approximant: degenerate interval");
    if (d < 1) throw std::invalid_argument("best_approximant: d must be >= 1");
    const std::size_t m = static_cast<std::size_t>(d) + 2;
    std::size_t g = std::max<std::size_t>(grid_size, 10 * m);
    if (g % 2 == 1) ++g;

    constexpr std::size_t kGridCap = std::size_t(1) << 21;
    ExchangeState st;
    std::vector<double> pts;
    bool degenerate = false;
    bool certified = false;

    while (true) {
        pts = cheb_grid(Y, g);
        st = run_exchange(sigma, Y, d, pts, nullptr);

        if (std::abs(st.E) <= 1e-8 * st.scale) {
            degenerate = true;
            break;
        }
        // Certify against a 4x finer grid.
        auto fine = cheb_grid(Y, 4 * g);
        const double mid = Y.mid(), rad = 0.5 * Y.length();
        double sup_fine = 0.0;
        for (double y : fine) {
            sup_fine = std::max(sup_fine,
                                std::abs(sigma(y) - clenshaw(st.cheb, (y - mid) / rad)));
        }
        const double E = std::abs(st.E);
        if (sup_fine <= E * (1.0 + 1e-6) + 1e-12 * st.scale) {
            certified = true;
            break;
        }
        if (g >= kGridCap)
            throw std::runtime_error(
                "best_approximant: grid refinement did not certify (pathological "
                "activation or insufficient grid cap)");
        g *= 2;
    }
    if (!degenerate && !certified)
        throw std::runtime_error("best_approximant: exchange failed to converge");

    MinimaxResult res;
    res.interval = Y;
    res.degree = d;
    res.cheb = st.cheb;
    res.error = std::abs(st.E);
    res.sign = st.E >= 0.0 ? 1 : -1;
    res.effectively_polynomial = degenerate;
    res.sigma_scale = st.scale;
    res.grid_points = pts.size();
    res.alternation_points.reserve(m);
    for (std::size_t idx : st.ref) res.alternation_points.push_back(pts[idx]);
    res.approximant = res.taylor_at(0.0);
    return res;
}

double jackson_bound(double omega_value) {
    if (omega_value < 0.0) throw std::invalid_argument("jackson_bound: negative modulus");
    return 6.0 * omega_value;
}

double estimate_modulus(const std::function<double(const std::vector<double>&)>& f,
                        const GridSpec& grid, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("estimate_modulus: delta must be > 0");
    grid.validate();
    const std::size_t n = grid.dimensions();
    const std::size_t total = grid.total_points();

    std::vector<double> vals(total);
    for (std::size_t i = 0; i < total; ++i) vals[i] = f(grid.point(i));

    // Per-axis spacings and offset windows covering ||x-y|| <= delta.
    std::vector<double> h(n);
    std::vector<long> win(n);
    std::vector<long> res(n);
    for (std::size_t i = 0; i < n; ++i) {
        res[i] = static_cast<long>(grid.resolution[i]);
        h[i] = (grid.hi[i] - grid.lo[i]) / static_cast<double>(grid.resolution[i] - 1);
        win[i] = static_cast<long>(std::floor(delta / h[i] + 1e-12));
    }

    // Enumerate offsets o != 0 with the last nonzero entry positive.
    std::vector<long> offset(n, 0);
    std::vector<std::vector<long>> offsets;
    std::function<void(std::size_t)> rec = [&](std::size_t axis) {
        if (axis == n) {
            for (std::size_t i = n; i-- > 0;) {
                if (offset[i] > 0) { offsets.push_back(offset); return; }
                if (offset[i] < 0) return;
            }
            return;  // zero offset
        }
        for (long o = -win[axis]; o <= win[axis]; ++o) {
            offset[axis] = o;
            rec(axis + 1);
        }
        offset[axis] = 0;
    };
    rec(0);

    double best = 0.0;
    std::vector<long> idx(n, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (const auto& o : offsets) {
            double dist2 = 0.0;
            bool ok = true;
            std::size_t pflat = 0, stride = 1;
            for (std::size_t i = 0; i < n; ++i) {
                const long j = idx[i] + o[i];
                if (j < 0 || j >= res[i]) { ok = false; break; }
                dist2 += (o[i] * h[i]) * (o[i] * h[i]);
                pflat += static_cast<std::size_t>(j) * stride;
                stride *= static_cast<std::size_t>(res[i]);
            }
            if (!ok || dist2 > delta * delta * (1.0 + 1e-12)) continue;
            best = std::max(best, std::abs(vals[flat] - vals[pflat]));
        }
        // advance multi-index (first axis fastest, matching GridSpec::point)
        for (std::size_t i = 0; i < n; ++i) {
            if (++idx[i] < res[i]) break;
            idx[i] = 0;
        }
    }
    return best;
}

int d_epsilon(const VectorFn& f, const std::vector<double>& lo,
              const std::vector<double>& hi, double eps, int cap) {
    if (eps <= 0.0) throw std::invalid_argument("d_epsilon: eps must be > 0");
    const std::size_t n = lo.size();
    double diag2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    const double D = std::sqrt(diag2);
    if (D == 0.0) return 2;

    const std::size_t m = f(lo).size();
    for (int d = 2; d <= cap; ++d) {
        const double delta = D / (2.0 * d);
        // spacing <= delta/4 per axis
        std::size_t per_axis = 9;
        for (std::size_t i = 0; i < n; ++i) {
            const double range = hi[i] - lo[i];
            if (range <= 0.0) continue;
            per_axis = std::max(per_axis,
                                static_cast<std::size_t>(std::ceil(range / (delta / 4.0))) + 2);
        }
        GridSpec grid = GridSpec::uniform(lo, hi, per_axis);
        grid.validate();
        double worst = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
            auto coord = [&](const std::vector<double>& x) { return f(x)[t]; };
            worst = std::max(worst, estimate_modulus(coord, grid, delta));
            if (worst >= eps / 6.0) break;
        }
        if (worst < eps / 6.0) return d;
    }
    throw std::runtime_error("d_epsilon: cap exceeded (eps too small for grid resolution)");
}

namespace {

CrossingCheck crossing_in_gap(const ActivationSpec& sigma, const MinimaxResult& res,
                              std::size_t gap) {
    const double a = res.alternation_points[gap];
    const double b = res.alternation_points[gap + 1];
    auto r = [&](double y) { return sigma(y) - res.eval(y); };
    double ra = r(a), rb = r(b);
    if (ra == 0.0) ra = (gap % 2 == 0 ? res.sign : -res.sign) * 1.0;
    if (rb == 0.0) rb = (gap % 2 == 0 ? -res.sign : res.sign) * 1.0;
    if ((ra > 0.0) == (rb > 0.0))
        throw std::runtime_error(
            "alternation_ratio_check: no sign change between alternation points "
            "(broken certificate)");
    double loy = a, hiy = b;
    double rl = ra;
    for (int it = 0; it < 200 && hiy - loy > 1e-12; ++it) {
        const double mid = 0.5 * (loy + hiy);
        const double rm = r(mid);
        if (rm == 0.0) { loy = hiy = mid; break; }
        if ((rm > 0.0) == (rl > 0.0)) { loy = mid; rl = rm; }
        else hiy = mid;
    }
    CrossingCheck out;
    out.crossing = 0.5 * (loy + hiy);
    const double len = res.interval.length();
    out.ratio = std::min(out.crossing - res.interval.lo,
                         res.interval.hi - out.crossing) / len;
    out.threshold = 1.0 / (res.degree + 2);
    out.passes = out.ratio > out.threshold;
    return out;
}

}  // namespace

CrossingCheck alternation_ratio_check(const ActivationSpec& sigma,
                                      const MinimaxResult& res) {
    if (res.alternation_points.size() < 3)
        throw std::invalid_argument("alternation_ratio_check: certificate too short");
    return crossing_in_gap(sigma, res, 1);
}

std::vector<CrossingCheck> all_gap_crossings(const ActivationSpec& sigma,
                                             const MinimaxResult& res) {
    std::vector<CrossingCheck> out;
    for (std::size_t gap = 0; gap + 1 < res.alternation_points.size(); ++gap) {
        try {
            out.push_back(crossing_in_gap(sigma, res, gap));
        } catch (const std::runtime_error&) {
            // skip gaps without a clean sign change
        }
    }
    return out;
}

std::vector<double> approx_growth_diagnostic(const ActivationSpec& sigma,
                                             const std::vector<Interval>& intervals,
                                             int d, double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("approx_growth_diagnostic: gamma > 0 required");
    std::vector<double> out;
    out.reserve(intervals.size());
    for (const auto& Y : intervals) {
        const MinimaxResult r = best_approximant(sigma, Y, d);
        out.push_back(r.error / std::pow(Y.length(), 1.0 + gamma));
    }
    return out;
}

}  // namespace polynet
