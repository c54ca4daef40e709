#include "polynet/constructor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polynet/algebra.hpp"
#include "polynet/rng.hpp"

namespace polynet {

// ---------------------------------------------------------------------------
// Schedule and domain
// ---------------------------------------------------------------------------

double ScaleSchedule::lambda(int k) const {
    return lambda0 * std::pow(growth, k);
}

Interval ScaleSchedule::nested(Interval prev, double len, double desired_center) {
    // Center window admissible for prev ⊆ next of length len.
    const double c_lo = prev.hi - 0.5 * len;
    const double c_hi = prev.lo + 0.5 * len;
    const double c = std::clamp(desired_center, std::min(c_lo, c_hi), std::max(c_lo, c_hi));
    return {c - 0.5 * len, c + 0.5 * len};
}

std::vector<Interval> ScaleSchedule::intervals(double center0, int count) const {
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(count));
    Interval cur{center0 - 0.5 * lambda(0), center0 + 0.5 * lambda(0)};
    out.push_back(cur);
    for (int k = 1; k < count; ++k) {
        cur = nested(cur, lambda(k), cur.mid());
        out.push_back(cur);
    }
    return out;
}

std::vector<double> BoxDomain::anchor_point() const {
    if (!anchor.empty()) return anchor;
    std::vector<double> c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

double BoxDomain::radius() const {
    const auto x0 = anchor_point();
    double r2 = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double d = std::max(std::abs(hi[i] - x0[i]), std::abs(lo[i] - x0[i]));
        r2 += d * d;
    }
    return std::sqrt(r2);
}

void BoxDomain::validate() const {
    if (lo.empty() || lo.size() != hi.size())
        throw std::invalid_argument("BoxDomain: inconsistent bounds");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i])) throw std::invalid_argument("BoxDomain: lo > hi");
    }
    if (!anchor.empty() && anchor.size() != lo.size())
        throw std::invalid_argument("BoxDomain: anchor dimension mismatch");
}

// ---------------------------------------------------------------------------
// Cayley-Menger machinery
// ---------------------------------------------------------------------------

namespace {

double cayley_menger_det(const std::vector<std::vector<double>>& pts,
                         const std::vector<std::size_t>& take) {
    const std::size_t k = take.size();
    Eigen::MatrixXd M(k + 1, k + 1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < pts[take[i]].size(); ++c) {
                const double d = pts[take[i]][c] - pts[take[j]][c];
                d2 += d * d;
            }
            M(i, j) = d2;
        }
        M(i, k) = 1.0;
        M(k, i) = 1.0;
    }
    M(k, k) = 0.0;
    return M.determinant();
}

}  // namespace

double simplex_height_diagnostic(const std::vector<std::vector<double>>& points,
                                 std::size_t apex_index) {
    const std::size_t N = points.size();
    if (N < 2) throw std::invalid_argument("simplex_height_diagnostic: need >= 2 points");
    if (apex_index >= N) throw std::invalid_argument("simplex_height_diagnostic: bad apex");

    std::vector<std::size_t> all(N), rest;
    for (std::size_t i = 0; i < N; ++i) all[i] = i;
    for (std::size_t i = 0; i < N; ++i) {
        if (i != apex_index) rest.push_back(i);
    }
    const double detM = cayley_menger_det(points, all);
    const double detMp = cayley_menger_det(points, rest);
    if (detMp == 0.0 || !std::isfinite(detM) || !std::isfinite(detMp))
        throw std::runtime_error("simplex_height_diagnostic: degenerate simplex");
    const double h2 = -0.5 * detM / detMp;
    if (!(h2 > 0.0))
        throw std::runtime_error("simplex_height_diagnostic: degenerate simplex");
    return std::sqrt(h2);
}

// ---------------------------------------------------------------------------
// Pipeline internals
// ---------------------------------------------------------------------------

namespace {

constexpr double kCondSoftLimit = 1e12;
constexpr int kRedrawCap = 16;

struct PipelineCtx {
    const ConstructionRequest* req = nullptr;
    int n = 0, m = 0;
    int d_req = 0;   // degree of the emitted unit count C(n+d_req, d_req)
    int d_eff = 0;   // degree driven through the algebra
    std::size_t N_req = 0, N_act = 0;
    MonomialBasis active;
    std::vector<double> x0;
    double rX = 0.0;
    Eigen::MatrixXd targets;          // N_act x m, nu(f0^[t]) columns
    std::vector<double> out_bias;     // f^[t](x0)
    VectorFn truth;                   // certification reference
    double surrogate_err = 0.0;

    bool frozen = false;
    std::vector<std::vector<double>> frozen_dirs;
    double frozen_max_norm = 0.0;
};

struct CertOutcome {
    std::vector<double> grid_sup;
    double slack = 0.0;
    std::size_t points = 0;
    bool ok = false;
    double worst = std::numeric_limits<double>::infinity();  // max(sup_t) + slack
};

CertOutcome certify_network(const PipelineCtx& ctx, const NetworkWeights& w, double eps) {
    const auto& dom = ctx.req->domain;
    const std::size_t n = dom.lo.size();
    CertOutcome out;
    out.grid_sup.assign(static_cast<std::size_t>(ctx.m), 0.0);

    auto eval_sup = [&](const GridSpec& g, double* lip_out) {
        std::vector<double> sup(static_cast<std::size_t>(ctx.m), 0.0);
        const std::size_t total = g.total_points();
        std::vector<double> prev_err;  // for finite-difference Lipschitz estimate
        double lip = 0.0;
        std::vector<double> err(static_cast<std::size_t>(ctx.m));
        std::vector<std::vector<double>> line(g.resolution[0],
                                              std::vector<double>(static_cast<std::size_t>(ctx.m)));
        for (std::size_t flat = 0; flat < total; ++flat) {
            const auto x = g.point(flat);
            const auto fv = ctx.truth(x);
            const auto rv = forward(w, ctx.req->sigma, x);
            for (int t = 0; t < ctx.m; ++t) {
                err[static_cast<std::size_t>(t)] =
                    fv[static_cast<std::size_t>(t)] - rv[static_cast<std::size_t>(t)];
                sup[static_cast<std::size_t>(t)] =
                    std::max(sup[static_cast<std::size_t>(t)],
                             std::abs(err[static_cast<std::size_t>(t)]));
            }
            if (lip_out) {
                const std::size_t i0 = flat % g.resolution[0];
                const double h0 = (g.hi[0] - g.lo[0]) / static_cast<double>(g.resolution[0] - 1);
                if (i0 > 0) {
                    for (int t = 0; t < ctx.m; ++t)
                        lip = std::max(lip, std::abs(err[static_cast<std::size_t>(t)] -
                                                     line[i0 - 1][static_cast<std::size_t>(t)]) / h0);
                }
                line[i0] = err;
            }
        }
        if (lip_out) *lip_out = lip;
        return sup;
    };

    GridSpec coarse = GridSpec::uniform(dom.lo, dom.hi, ctx.req->min_points_per_axis);
    coarse.validate(ctx.req->grid_cap);
    double lip = 0.0;
    out.grid_sup = eval_sup(coarse, &lip);
    out.points = coarse.total_points();

    double worst0 = 0.0;
    for (double s : out.grid_sup) worst0 = std::max(worst0, s);
    if (worst0 >= eps) {  // refinement can only increase the grid sup
        out.worst = worst0;
        out.ok = false;
        return out;
    }

    // Resolution per the slack rule: spacing <= (eps/6) / Lip(f - rho).
    std::size_t per_axis = ctx.req->min_points_per_axis;
    if (lip > 0.0) {
        double max_range = 0.0;
        for (std::size_t i = 0; i < n; ++i) max_range = std::max(max_range, dom.hi[i] - dom.lo[i]);
        const double spacing = (eps / 6.0) / lip;
        if (spacing > 0.0 && max_range > 0.0) {
            const double want = std::ceil(max_range / spacing) + 1.0;
            const double cap = std::floor(std::pow(static_cast<double>(ctx.req->grid_cap),
                                                   1.0 / static_cast<double>(n)));
            per_axis = static_cast<std::size_t>(std::clamp(
                want, static_cast<double>(ctx.req->min_points_per_axis), std::min(cap, 4097.0)));
        }
    }
    if (per_axis > coarse.resolution[0]) {
        GridSpec fine = GridSpec::uniform(dom.lo, dom.hi, per_axis);
        fine.validate(ctx.req->grid_cap);
        out.grid_sup = eval_sup(fine, &lip);
        out.points = fine.total_points();
    }

    double hmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        hmax = std::max(hmax, (dom.hi[i] - dom.lo[i]) /
                                  static_cast<double>(per_axis - 1));
    }
    out.slack = 0.5 * lip * hmax * std::sqrt(static_cast<double>(n));
    out.worst = 0.0;
    for (double s : out.grid_sup) out.worst = std::max(out.worst, s + out.slack);
    out.ok = out.worst < eps;
    return out;
}

// Deterministic direction set: Schur-seed directions normalized, rescaled
// into the annulus (0.5 lambda', lambda'], with alternating sign flips for
// geometric spread. Nonsingularity is checked by the caller.
std::vector<std::vector<double>> seed_directions(int n, int d_eff, std::size_t N,
                                                 double lam_prime, std::size_t ladder_offset) {
    std::vector<double> base(N);
    for (std::size_t j = 0; j < N; ++j) {
        base[j] = 1.0 + static_cast<double>(j + 1 + ladder_offset) /
                            static_cast<double>(N + 1 + ladder_offset);
    }
    // schur_seed_points wants exactly C(n+d,d) values; build points directly.
    std::vector<std::vector<double>> dirs(N, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t j = 0; j < N; ++j) {
        double expnt = 1.0;
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double v = std::pow(base[j], expnt);
            dirs[j][static_cast<std::size_t>(i)] = v;
            norm2 += v * v;
            expnt *= static_cast<double>(d_eff + 1);
        }
        const double target_norm =
            lam_prime * (0.5 + 0.5 * static_cast<double>(j + 1) / static_cast<double>(N));
        const double scale = (j % 2 == 0 ? 1.0 : -1.0) * target_norm / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) dirs[j][static_cast<std::size_t>(i)] *= scale;
    }
    return dirs;
}

std::vector<std::vector<double>> random_directions(int n, std::size_t N, double lam_prime,
                                                   Rng& rng) {
    std::vector<std::vector<double>> dirs(N, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t j = 0; j < N; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            dirs[j][static_cast<std::size_t>(i)] = rng.normal();
            norm2 += dirs[j][static_cast<std::size_t>(i)] * dirs[j][static_cast<std::size_t>(i)];
        }
        const double target = lam_prime * (0.5 + 0.5 * (1.0 - rng.uniform()));
        const double scale = target / std::max(std::sqrt(norm2), 1e-300);
        for (int i = 0; i < n; ++i) dirs[j][static_cast<std::size_t>(i)] *= scale;
    }
    return dirs;
}

struct AttemptResult {
    bool viable = false;
    bool success = false;
    double score = std::numeric_limits<double>::infinity();
    double crossing_used = 0.0;
    std::string reason;
    ConstructionReport report;
};

// One (interval, crossing-candidate, direction-draw) synthesis try.
AttemptResult attempt_scale(const PipelineCtx& ctx, Interval Y, int k, double lambda0_used) {
    AttemptResult best;
    const auto& req = *ctx.req;
    const ActivationSpec& sigma = req.sigma;
    const int d = ctx.d_eff;
    const std::size_t N = ctx.N_act;

    MinimaxResult mm;
    try {
        mm = best_approximant(sigma, Y, d);
    } catch (const std::exception& e) {
        best.reason = std::string("minimax: ") + e.what();
        return best;
    }

    // Crossing candidates: middle gap first, then the remaining gaps by
    // descending ratio. For sigma effectively polynomial on Y the residual
    // has no usable sign structure; any interior point works (ratio by
    // position), preferring ones where sigma does not vanish.
    std::vector<CrossingCheck> cands;
    if (mm.effectively_polynomial) {
        for (double frac : {0.5, 0.625, 0.375, 0.75, 0.25}) {
            CrossingCheck c;
            c.crossing = Y.lo + frac * Y.length();
            c.ratio = std::min(frac, 1.0 - frac);
            c.threshold = 1.0 / (d + 2);
            c.passes = c.ratio > c.threshold;
            if (c.passes && std::abs(mm.eval(c.crossing)) > 1e-12 * std::max(mm.sigma_scale, 1.0))
                cands.push_back(c);
            if (cands.size() >= 3) break;
        }
    } else {
        auto all = all_gap_crossings(sigma, mm);
        std::vector<CrossingCheck> passing;
        for (std::size_t g = 0; g < all.size(); ++g) {
            if (all[g].passes) passing.push_back(all[g]);
        }
        // middle gap (index 1 of the gaps) first when it passed
        auto mid_it = std::find_if(passing.begin(), passing.end(), [&](const CrossingCheck& c) {
            return all.size() > 1 && c.crossing == all[1].crossing;
        });
        if (mid_it != passing.end()) std::iter_swap(passing.begin(), mid_it);
        if (passing.size() > 1) {
            std::sort(passing.begin() + 1, passing.end(),
                      [](const CrossingCheck& a, const CrossingCheck& b) { return a.ratio > b.ratio; });
        }
        cands = std::move(passing);
    }
    if (cands.empty()) {
        best.reason = "no crossing with ratio > 1/(d+2)";
        return best;
    }

    for (const auto& cand : cands) {
        const double yk = cand.crossing;
        const double lam_prime = std::min(yk - Y.lo, Y.hi - yk) / ctx.rX;
        if (!(lam_prime > 0.0)) continue;
        if (req.large_input_norms && !(0.5 * lam_prime > *req.large_input_norms)) continue;
        if (ctx.frozen && ctx.frozen_max_norm > lam_prime) continue;

        // Local coefficients of sigma_k around yk, with the deterministic
        // perturbation of vanishing coefficients (magnitude 1e-9 * E_d in
        // function-value terms over the used range).
        std::vector<double> c = mm.taylor_at(yk);
        const double rad = lam_prime * ctx.rX;
        double cmax = 0.0;
        for (int j = 0; j <= d; ++j) cmax = std::max(cmax, std::abs(c[static_cast<std::size_t>(j)]) * std::pow(rad, j));
        bool jittered = false;
        Rng jrng(req.seed ^ (0x9E37ull * static_cast<std::uint64_t>(k + 1)) ^
                 static_cast<std::uint64_t>(std::llround(yk * 1e6)));
        for (int j = 0; j <= d; ++j) {
            const double contrib = std::abs(c[static_cast<std::size_t>(j)]) * std::pow(rad, j);
            if (contrib <= 1e-12 * cmax) {
                const double sign = jrng.uniform() < 0.5 ? -1.0 : 1.0;
                c[static_cast<std::size_t>(j)] += sign * 1e-9 * std::max(mm.error, 1e-300) / std::pow(rad, j);
                jittered = true;
            }
        }
        if (std::abs(c[0]) == 0.0) {
            c[0] = 1e-9 * std::max(mm.error, 1e-300);
            jittered = true;
        }

        const int redraws = ctx.frozen ? 1 : kRedrawCap;
        Rng draw_rng(req.seed ^ 0xD1CEull ^ static_cast<std::uint64_t>(k * 131 + 7));
        for (int attempt_i = 0; attempt_i < redraws; ++attempt_i) {
            std::vector<std::vector<double>> dirs;
            if (ctx.frozen) {
                dirs = ctx.frozen_dirs;
            } else if (attempt_i == 0) {
                dirs = seed_directions(ctx.n, d, N, lam_prime, 0);
            } else {
                dirs = random_directions(ctx.n, N, lam_prime, draw_rng);
            }

            // Nonsingularity of the direction Vandermonde, at unit scale for a
            // fair relative tolerance.
            std::vector<std::vector<double>> unit(dirs.begin(), dirs.begin() + N);
            for (auto& v : unit) {
                for (double& x : v) x /= lam_prime;
            }
            const auto van = build_vandermonde(unit, ctx.active);
            const auto check = is_nonsingular(van, 1e-10);
            if (!check.nonsingular) {
                if (ctx.frozen) {
                    best.reason = "singular non-bias Vandermonde for frozen directions";
                    best.report.singular_draw = true;
                    return best;
                }
                continue;
            }

            // G columns: colex coefficients of ghat_j = sigma_k(w_j . u + yk).
            Eigen::MatrixXd G(N, N);
            for (std::size_t j = 0; j < N; ++j) {
                const auto col = compose_affine(ctx.active, c, dirs[j], 0.0);
                for (std::size_t i = 0; i < N; ++i) G(i, j) = col[i];
            }

            LinearSolveReport solve;
            try {
                solve = solve_coefficients(G, ctx.targets);
            } catch (const std::exception&) {
                if (ctx.frozen) {
                    best.reason = "frozen-direction system singular to working precision";
                    best.report.singular_draw = true;
                    return best;
                }
                continue;
            }
            if (solve.condition_estimate > kCondSoftLimit && attempt_i + 1 < redraws && !ctx.frozen)
                continue;

            // Eq.(4): per-output coefficient sums vanish.
            double zero_defect = 0.0;
            bool zero_ok = true;
            for (int t = 0; t < ctx.m; ++t) {
                const double l1 = solve.solution.col(t).cwiseAbs().sum();
                const double s = std::abs(solve.solution.col(t).sum());
                zero_defect = std::max(zero_defect, l1 > 0.0 ? s / l1 : 0.0);
                if (s > 1e-8 * l1 + 1e-14) zero_ok = false;
            }

            double max_a = solve.solution.cwiseAbs().maxCoeff();
            double min_norm = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < N; ++j) {
                double s = 0.0;
                for (double x : dirs[j]) s += x * x;
                min_norm = std::min(min_norm, std::sqrt(s));
            }

            AttemptResult res;
            res.viable = true;
            res.crossing_used = yk;
            res.report.scale_index_used = k;
            res.report.lambda0_used = lambda0_used;
            res.report.interval_used = Y;
            res.report.crossing = yk;
            res.report.alternation_ratio = cand.ratio;
            res.report.minimax_error = mm.error;
            res.report.jitter_applied = jittered;
            res.report.vandermonde_condition = solve.condition_estimate;
            res.report.vandermonde_margin = check.margin;
            res.report.zero_sum_defect = zero_defect;
            res.report.effective_degree = d;
            res.report.constraint_min_direction_norm = min_norm;
            res.report.constraint_max_output_weight = max_a;

            bool constraints_ok = zero_ok;
            if (req.small_output_weights && !(max_a < *req.small_output_weights)) {
                constraints_ok = false;
                res.reason = "small-output-weight constraint unmet";
            }
            if (req.large_input_norms && !(min_norm > *req.large_input_norms)) {
                constraints_ok = false;
                res.reason = "large-input-norm constraint unmet";
            }
            if (!zero_ok) res.reason = "coefficient zero-sum check failed";

            // Assemble the emitted network: active units then zero-output
            // padding up to N_req.
            NetworkWeights w;
            w.W1.resize(ctx.n + 1, static_cast<Eigen::Index>(ctx.N_req));
            w.W2.setZero(static_cast<Eigen::Index>(ctx.N_req) + 1, ctx.m);
            std::vector<std::vector<double>> pad;
            if (ctx.N_req > N) {
                if (ctx.frozen) {
                    pad.assign(ctx.frozen_dirs.begin() + N, ctx.frozen_dirs.end());
                } else {
                    pad = seed_directions(ctx.n, d, ctx.N_req - N, lam_prime, N);
                }
            }
            for (std::size_t j = 0; j < ctx.N_req; ++j) {
                const auto& dir = j < N ? dirs[j] : pad[j - N];
                double dot = 0.0;
                for (int i = 0; i < ctx.n; ++i) {
                    w.W1(i + 1, static_cast<Eigen::Index>(j)) = dir[static_cast<std::size_t>(i)];
                    dot += dir[static_cast<std::size_t>(i)] * ctx.x0[static_cast<std::size_t>(i)];
                }
                w.W1(0, static_cast<Eigen::Index>(j)) = yk - dot;
            }
            for (int t = 0; t < ctx.m; ++t) {
                w.W2(0, t) = ctx.out_bias[static_cast<std::size_t>(t)];
                for (std::size_t j = 0; j < N; ++j)
                    w.W2(static_cast<Eigen::Index>(j) + 1, t) = solve.solution(static_cast<Eigen::Index>(j), t);
            }
            res.report.weights = w;
            res.report.padded_units = static_cast<int>(ctx.N_req - N);
            res.report.coefficient_norm.resize(static_cast<std::size_t>(ctx.m));
            for (int t = 0; t < ctx.m; ++t)
                res.report.coefficient_norm[static_cast<std::size_t>(t)] =
                    solve.solution.col(t).cwiseAbs().sum();

            const CertOutcome cert = certify_network(ctx, w, req.eps);
            res.report.certified_error.resize(static_cast<std::size_t>(ctx.m));
            for (int t = 0; t < ctx.m; ++t)
                res.report.certified_error[static_cast<std::size_t>(t)] =
                    cert.grid_sup[static_cast<std::size_t>(t)] + cert.slack;
            res.report.grid_sup = cert.grid_sup;
            res.report.lipschitz_slack = cert.slack;
            res.report.verification_points = cert.points;
            res.score = cert.worst;
            res.success = cert.ok && constraints_ok;
            if (!cert.ok && res.reason.empty()) res.reason = "certified error above eps";

            // Error-decomposition audit: sup_j |sigma - sigma_k_jittered| over
            // each unit's pre-activation range, times |a|_1, plus surrogate.
            double rhs = ctx.surrogate_err;
            {
                double worst_t = 0.0;
                for (int t = 0; t < ctx.m; ++t) {
                    double s = 0.0;
                    for (std::size_t j = 0; j < N; ++j) {
                        double nj = 0.0;
                        for (double x : dirs[j]) nj += x * x;
                        nj = std::sqrt(nj) * ctx.rX;
                        double sup = 0.0;
                        for (int q = 0; q <= 128; ++q) {
                            const double tau = -nj + 2.0 * nj * q / 128.0;
                            double pv = 0.0;
                            for (std::size_t r = c.size(); r-- > 0;) pv = pv * tau + c[r];
                            sup = std::max(sup, std::abs(sigma(yk + tau) - pv));
                        }
                        s += std::abs(solve.solution(static_cast<Eigen::Index>(j), t)) * sup;
                    }
                    worst_t = std::max(worst_t, s);
                }
                rhs += worst_t;
            }
            res.report.error_bound_rhs = rhs;

            if (res.success) return res;
            if (res.score < best.score || !best.viable) best = res;
            if (solve.condition_estimate <= kCondSoftLimit) break;  // draw was fine; candidate failed for other reasons
        }
        if (best.success) return best;
    }
    if (!best.viable && best.reason.empty())
        best.reason = "no admissible crossing/direction combination at this scale";
    return best;
}

// Deterministic probe for the initial interval center: prefer windows where
// the local approximant has all coefficient channels alive (the construction's
// non-degeneracy hypothesis). Centers where sigma_k loses a channel (odd or
// even symmetry, vanishing local degree) score near zero.
std::vector<double> probe_centers(const ActivationSpec& sigma, int d_eff, double width,
                                  std::size_t top) {
    std::vector<double> cands;
    if (sigma.kind() == ActivationSpec::Kind::Table && sigma.domain_hint()) {
        const auto [a, b] = *sigma.domain_hint();
        for (int i = 1; i <= 7; ++i) cands.push_back(a + (b - a) * i / 8.0);
    }
    for (double c : {0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0,
                     3.0, -3.0})
        cands.push_back(c);

    struct Scored {
        double center;
        double score;
    };
    std::vector<Scored> scored;
    for (double c : cands) {
        try {
            const Interval Y{c - 0.5 * width, c + 0.5 * width};
            const MinimaxResult mm = best_approximant(sigma, Y, d_eff);
            const auto tc = mm.taylor_at(c);
            double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
            for (int j = 0; j <= d_eff; ++j) {
                const double v = std::abs(tc[static_cast<std::size_t>(j)]) * std::pow(0.5 * width, j);
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            scored.push_back({c, mx > 0.0 ? mn / mx : 0.0});
        } catch (const std::exception&) {
            // unusable window (e.g. activation undefined that far out)
        }
    }
    std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return std::abs(a.center) < std::abs(b.center);
    });
    std::vector<double> out;
    for (const auto& s : scored) {
        if (out.size() >= top) break;
        bool dup = false;
        for (double o : out) dup = dup || std::abs(o - s.center) < 1e-12;
        if (!dup) out.push_back(s.center);
    }
    if (out.empty()) out.push_back(0.0);
    return out;
}

void nonpoly_probe_or_throw(const PipelineCtx& ctx) {
    const ActivationSpec& sigma = ctx.req->sigma;
    if (ctx.d_req < 2)
        throw std::invalid_argument("construct_polynomial: target degree must be >= 2");
    Interval probe{-8.0, 8.0};
    if (sigma.kind() == ActivationSpec::Kind::Table && sigma.domain_hint())
        probe = {sigma.domain_hint()->first, sigma.domain_hint()->second};
    const MinimaxResult mm = best_approximant(sigma, probe, ctx.d_req - 1);
    if (mm.error <= 1e-8 * std::max(mm.sigma_scale, 1e-300))
        throw std::invalid_argument(
            "activation fails non-polynomial probe (sigma in P_{<=d-1} on the probe interval)");
}

ConstructionReport finalize_failure(const PipelineCtx& ctx, AttemptResult best,
                                    const std::string& fallback_reason) {
    ConstructionReport rep = std::move(best.report);
    rep.success = false;
    rep.sigma_kind = ctx.req->sigma.name();
    rep.failure_reason = best.reason.empty() ? fallback_reason : best.reason;
    return rep;
}

ConstructionReport run_poly_core(PipelineCtx& ctx) {
    const ConstructionRequest& req = *ctx.req;
    if (!(req.eps > 0.0)) throw std::invalid_argument("construction: eps must be > 0");

    // Degenerate domain: a single point is matched exactly by the output
    // biases.
    if (ctx.rX == 0.0 || ctx.d_eff == 0) {
        NetworkWeights w;
        w.W1.setZero(ctx.n + 1, static_cast<Eigen::Index>(ctx.N_req));
        w.W2.setZero(static_cast<Eigen::Index>(ctx.N_req) + 1, ctx.m);
        const double lam_p = ctx.frozen ? std::max(ctx.frozen_max_norm, 1.0) : 1.0;
        auto dirs = ctx.frozen ? ctx.frozen_dirs
                               : seed_directions(ctx.n, std::max(ctx.d_eff, 1), ctx.N_req, lam_p, 0);
        for (std::size_t j = 0; j < ctx.N_req; ++j) {
            for (int i = 0; i < ctx.n; ++i)
                w.W1(i + 1, static_cast<Eigen::Index>(j)) = dirs[j][static_cast<std::size_t>(i)];
        }
        for (int t = 0; t < ctx.m; ++t) w.W2(0, t) = ctx.out_bias[static_cast<std::size_t>(t)];
        ConstructionReport rep;
        rep.weights = w;
        rep.sigma_kind = req.sigma.name();
        rep.effective_degree = ctx.d_eff;
        rep.padded_units = static_cast<int>(ctx.N_req);
        const CertOutcome cert = certify_network(ctx, w, req.eps);
        rep.certified_error.assign(cert.grid_sup.begin(), cert.grid_sup.end());
        for (double& e : rep.certified_error) e += cert.slack;
        rep.grid_sup = cert.grid_sup;
        rep.lipschitz_slack = cert.slack;
        rep.verification_points = cert.points;
        rep.coefficient_norm.assign(static_cast<std::size_t>(ctx.m), 0.0);
        rep.success = cert.ok;
        if (!rep.success) rep.failure_reason = "degenerate-path certification failed";
        return rep;
    }

    nonpoly_probe_or_throw(ctx);

    const bool constrained = req.small_output_weights.has_value() || req.large_input_norms.has_value();
    const ScaleSchedule& sched = req.schedule;

    // Restart ladder over the base scale: bounded activations certify in the
    // small-window regime, weight-constrained modes in the escalated one.
    std::vector<double> lambda0s;
    if (ctx.frozen) {
        const double feas = std::max(sched.lambda0, 2.1 * ctx.frozen_max_norm * ctx.rX);
        for (double mul : {1.0, 1.22, 1.5, 1.85, 2.3, 2.9, 3.7, 4.8, 6.2, 8.0, 10.5, 14.0})
            lambda0s.push_back(feas * mul);
    } else if (constrained) {
        lambda0s = {sched.lambda0};
    } else {
        double l = sched.lambda0;
        for (int r = 0; r < 13; ++r) {
            lambda0s.push_back(l);
            l /= 4.0;
        }
    }

    const int inner_k_cap = constrained ? sched.max_k : (ctx.frozen ? 5 : 7);
    AttemptResult global_best;
    int attempts_left = 4 * sched.max_k;

    for (double l0 : lambda0s) {
        if (attempts_left <= 0) break;
        const auto centers = probe_centers(req.sigma, ctx.d_eff, l0, ctx.frozen ? 3 : 2);
        for (double c0 : centers) {
            if (attempts_left <= 0) break;
            Interval Y{c0 - 0.5 * l0, c0 + 0.5 * l0};
            double prev_score = std::numeric_limits<double>::infinity();
            int worsening = 0;
            for (int k = 0; k <= inner_k_cap && attempts_left > 0; ++k) {
                --attempts_left;
                AttemptResult res = attempt_scale(ctx, Y, k, l0);
                if (res.success) {
                    res.report.success = true;
                    res.report.sigma_kind = req.sigma.name();
                    return res.report;
                }
                if (res.report.singular_draw && ctx.frozen)
                    return finalize_failure(ctx, std::move(res), "singular draw");
                if (res.viable && res.score < global_best.score) global_best = res;
                if (!global_best.viable && !res.viable && global_best.reason.empty())
                    global_best.reason = res.reason;

                if (!constrained) {
                    if (res.viable && res.score >= prev_score) ++worsening;
                    else worsening = 0;
                    if (worsening >= 2) break;
                    if (res.viable) prev_score = res.score;
                }
                const double next_center = res.viable ? res.crossing_used : Y.mid();
                Y = ScaleSchedule::nested(Y, l0 * std::pow(sched.growth, k + 1), next_center);
            }
        }
    }
    return finalize_failure(ctx, std::move(global_best), "scale-escalation cap reached");
}

PipelineCtx make_poly_ctx(const ConstructionRequest& req) {
    if (req.poly_target.empty())
        throw std::invalid_argument("construct_polynomial: polynomial target required");
    req.domain.validate();

    PipelineCtx ctx;
    ctx.req = &req;
    ctx.n = static_cast<int>(req.domain.lo.size());
    ctx.m = static_cast<int>(req.poly_target.size());
    ctx.x0 = req.domain.anchor_point();
    ctx.rX = req.domain.radius();

    const MonomialBasis& tb = req.poly_target.front().basis;
    if (tb.dimension() != ctx.n)
        throw std::invalid_argument("construct_polynomial: target/domain dimension mismatch");
    for (const auto& p : req.poly_target) {
        if (!(p.basis == tb))
            throw std::invalid_argument("construct_polynomial: targets must share one basis");
    }
    ctx.d_req = std::max(tb.max_degree(), 2);
    ctx.N_req = basis_size(ctx.n, ctx.d_req);

    // Recenter targets on the anchor and read off the effective degree.
    std::vector<MultiPoly> local;
    local.reserve(req.poly_target.size());
    double coeff_scale = 0.0;
    for (const auto& p : req.poly_target) {
        local.push_back(recenter(p, ctx.x0));
        for (double cv : local.back().coeffs) coeff_scale = std::max(coeff_scale, std::abs(cv));
    }
    int d_eff = 0;
    for (const auto& p : local) d_eff = std::max(d_eff, p.effective_degree(1e-12 * coeff_scale));
    ctx.d_eff = d_eff;
    ctx.active = enumerate_basis(ctx.n, std::max(d_eff, 1));
    ctx.N_act = ctx.active.size();

    ctx.targets.setZero(static_cast<Eigen::Index>(ctx.N_act), ctx.m);
    ctx.out_bias.resize(static_cast<std::size_t>(ctx.m));
    for (int t = 0; t < ctx.m; ++t) {
        const auto& p = local[static_cast<std::size_t>(t)];
        ctx.out_bias[static_cast<std::size_t>(t)] = p.coeffs[0];
        for (std::size_t i = 0; i < p.basis.size(); ++i) {
            if (auto pos = ctx.active.position(p.basis.exponents(i))) {
                if (*pos != 0) ctx.targets(static_cast<Eigen::Index>(*pos), t) = p.coeffs[i];
            }
        }
    }

    std::vector<MultiPoly> captured = local;
    ctx.truth = [captured](const std::vector<double>& x) {
        std::vector<double> out(captured.size());
        for (std::size_t t = 0; t < captured.size(); ++t) out[t] = captured[t].eval(x);
        return out;
    };
    return ctx;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public pipelines
// ---------------------------------------------------------------------------

ConstructionReport construct_polynomial(const ConstructionRequest& req) {
    PipelineCtx ctx = make_poly_ctx(req);
    return run_poly_core(ctx);
}

namespace {

// Least-squares polynomial surrogate of degree <= d_fit on a tensor grid, in
// axis-scaled coordinates for conditioning.
std::vector<MultiPoly> fit_surrogate(const ConstructionRequest& req, int d_fit, int m,
                                     double* eps1_out) {
    const auto& dom = req.domain;
    const int n = static_cast<int>(dom.lo.size());
    const auto x0 = dom.anchor_point();
    const MonomialBasis basis = enumerate_basis(n, d_fit);

    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        scale[static_cast<std::size_t>(i)] =
            std::max(std::max(dom.hi[static_cast<std::size_t>(i)] - x0[static_cast<std::size_t>(i)],
                              x0[static_cast<std::size_t>(i)] - dom.lo[static_cast<std::size_t>(i)]),
                     1e-300);
    }

    const std::size_t per_axis = std::max<std::size_t>(static_cast<std::size_t>(4 * d_fit + 9), 33);
    GridSpec fit_grid = GridSpec::uniform(dom.lo, dom.hi, per_axis);
    fit_grid.validate(req.grid_cap);
    const std::size_t P = fit_grid.total_points();

    Eigen::MatrixXd A(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(basis.size()));
    Eigen::MatrixXd B(static_cast<Eigen::Index>(P), m);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (std::size_t p = 0; p < P; ++p) {
        const auto x = fit_grid.point(p);
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] =
                (x[static_cast<std::size_t>(i)] - x0[static_cast<std::size_t>(i)]) /
                scale[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < basis.size(); ++k)
            A(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) = basis.eval_monomial(k, v);
        const auto fv = req.continuous_target(x);
        for (int t = 0; t < m; ++t) B(static_cast<Eigen::Index>(p), t) = fv[static_cast<std::size_t>(t)];
    }
    Eigen::MatrixXd C = A.colPivHouseholderQr().solve(B);

    std::vector<MultiPoly> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) {
        std::vector<double> coeffs(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            double down = 1.0;
            const MultiIndex& a = basis.exponents(k);
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < a[i]; ++e) down *= scale[static_cast<std::size_t>(i)];
            coeffs[k] = C(static_cast<Eigen::Index>(k), t) / down;
        }
        out.emplace_back(basis, x0, std::move(coeffs));
    }

    // Certify eps_1 on a denser grid.
    GridSpec check = GridSpec::uniform(dom.lo, dom.hi, 2 * per_axis + 1);
    check.validate(req.grid_cap);
    double eps1 = 0.0;
    for (std::size_t p = 0; p < check.total_points(); ++p) {
        const auto x = check.point(p);
        const auto fv = req.continuous_target(x);
        for (int t = 0; t < m; ++t)
            eps1 = std::max(eps1, std::abs(fv[static_cast<std::size_t>(t)] -
                                           out[static_cast<std::size_t>(t)].eval(x)));
    }
    *eps1_out = eps1;
    return out;
}

double modulus_at(const ConstructionRequest& req, int m, int d) {
    const auto& dom = req.domain;
    const std::size_t n = dom.lo.size();
    double diag2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag2 += (dom.hi[i] - dom.lo[i]) * (dom.hi[i] - dom.lo[i]);
    const double D = std::sqrt(diag2);
    const double delta = D / (2.0 * d);
    std::size_t per_axis = 9;
    for (std::size_t i = 0; i < n; ++i) {
        const double range = dom.hi[i] - dom.lo[i];
        if (range <= 0.0) continue;
        per_axis = std::max(per_axis,
                            static_cast<std::size_t>(std::ceil(range / (delta / 4.0))) + 1);
    }
    GridSpec grid = GridSpec::uniform(dom.lo, dom.hi, per_axis);
    grid.validate(req.grid_cap);
    double worst = 0.0;
    for (int t = 0; t < m; ++t) {
        auto coord = [&](const std::vector<double>& x) { return req.continuous_target(x)[static_cast<std::size_t>(t)]; };
        worst = std::max(worst, estimate_modulus(coord, grid, delta));
    }
    return worst;
}

}  // namespace

ConstructionReport construct_continuous(const ConstructionRequest& req) {
    if (!req.continuous_target)
        throw std::invalid_argument("construct_continuous: black-box target required");
    req.domain.validate();
    const int m = req.output_dim;
    const int n = static_cast<int>(req.domain.lo.size());

    const int d_eps = d_epsilon(req.continuous_target, req.domain.lo, req.domain.hi, req.eps, 512);

    std::vector<double> table;
    for (int d = 2; d <= d_eps; ++d) table.push_back(modulus_at(req, m, d));

    // Surrogate of degree <= d_eps by least squares; low effective degrees are
    // tried first and the fit escalates until it is well inside the budget.
    double eps1 = 0.0;
    std::vector<MultiPoly> surrogate;
    const int fit_cap = std::min(d_eps, 16);
    bool fitted = false;
    for (int d_fit = 2; d_fit <= fit_cap; ++d_fit) {
        surrogate = fit_surrogate(req, d_fit, m, &eps1);
        if (eps1 <= 0.5 * req.eps) {
            fitted = true;
            break;
        }
    }
    if (!fitted && eps1 >= req.eps) {
        ConstructionReport rep;
        rep.success = false;
        rep.sigma_kind = req.sigma.name();
        rep.d_eps = d_eps;
        rep.modulus_table = table;
        rep.surrogate_error = eps1;
        rep.failure_reason = "surrogate fit failed to reach eps_1 < eps at the degree cap";
        return rep;
    }

    ConstructionRequest inner = req;
    inner.poly_target = surrogate;
    inner.continuous_target = nullptr;

    PipelineCtx ctx = make_poly_ctx(inner);
    ctx.req = &inner;
    // The emitted unit count follows the modulus search, not the fit degree.
    ctx.d_req = d_eps;
    ctx.N_req = basis_size(n, d_eps);
    ctx.surrogate_err = eps1;
    // Certification runs against the true target.
    ctx.truth = [&req, m](const std::vector<double>& x) {
        auto out = req.continuous_target(x);
        out.resize(static_cast<std::size_t>(m));
        return out;
    };

    ConstructionReport rep = run_poly_core(ctx);
    rep.d_eps = d_eps;
    rep.modulus_table = table;
    rep.surrogate_error = eps1;
    return rep;
}

namespace {

ConstructionReport frozen_core(const ConstructionRequest& req,
                               const std::vector<std::vector<double>>& dirs) {
    PipelineCtx ctx = make_poly_ctx(req);
    ctx.frozen = true;
    ctx.frozen_dirs = dirs;
    for (const auto& d : dirs) {
        double s = 0.0;
        for (double x : d) s += x * x;
        ctx.frozen_max_norm = std::max(ctx.frozen_max_norm, std::sqrt(s));
    }
    if (dirs.size() != ctx.N_req)
        throw std::invalid_argument("frozen directions: need C(n+d,d) of them");

    // Drawn-Vandermonde singularity is reported, never retried.
    const double scale = std::max(ctx.frozen_max_norm, 1e-300);
    std::vector<std::vector<double>> unit;
    unit.reserve(ctx.N_act);
    for (std::size_t j = 0; j < ctx.N_act; ++j) {
        unit.push_back(dirs[j]);
        for (double& x : unit.back()) x /= scale;
    }
    const auto check = is_nonsingular(build_vandermonde(unit, ctx.active), 1e-10);
    if (!check.nonsingular) {
        ConstructionReport rep;
        rep.success = false;
        rep.singular_draw = true;
        rep.sigma_kind = req.sigma.name();
        rep.vandermonde_margin = check.margin;
        rep.failure_reason = "singular non-bias Vandermonde for the drawn directions";
        return rep;
    }
    ConstructionReport rep = run_poly_core(ctx);
    rep.vandermonde_margin = check.margin;
    return rep;
}

}  // namespace

ConstructionReport construct_random_features(const ConstructionRequest& req) {
    if (!req.frozen_random_first_layer)
        throw std::invalid_argument("construct_random_features: frozen_random_first_layer required");
    const double lam = req.frozen_random_first_layer->lambda;
    if (!(lam > 0.0)) throw std::invalid_argument("construct_random_features: lambda must be > 0");

    ConstructionRequest inner = req;
    double eps1 = 0.0;
    if (!req.poly_target.empty()) {
        // direct polynomial path
    } else if (req.continuous_target) {
        const int d_eps = d_epsilon(req.continuous_target, req.domain.lo, req.domain.hi, req.eps, 512);
        std::vector<MultiPoly> surrogate;
        bool fitted = false;
        for (int d_fit = 2; d_fit <= std::min(d_eps, 16); ++d_fit) {
            surrogate = fit_surrogate(req, d_fit, req.output_dim, &eps1);
            if (eps1 <= 0.5 * req.eps) {
                fitted = true;
                break;
            }
        }
        if (!fitted && eps1 >= req.eps) {
            ConstructionReport rep;
            rep.success = false;
            rep.sigma_kind = req.sigma.name();
            rep.failure_reason = "surrogate fit failed";
            return rep;
        }
        inner.poly_target = surrogate;
        inner.continuous_target = nullptr;
    } else {
        throw std::invalid_argument("construct_random_features: target required");
    }

    const int n = static_cast<int>(req.domain.lo.size());
    const int d = std::max(inner.poly_target.front().basis.max_degree(), 2);
    const std::size_t N = basis_size(n, d);

    // Direction uniform on the unit sphere, radius uniform on (lambda, 2*lambda].
    Rng rng(req.frozen_random_first_layer->seed);
    std::vector<std::vector<double>> dirs(N, std::vector<double>(static_cast<std::size_t>(n)));
    for (std::size_t j = 0; j < N; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            dirs[j][static_cast<std::size_t>(i)] = rng.normal();
            norm2 += dirs[j][static_cast<std::size_t>(i)] * dirs[j][static_cast<std::size_t>(i)];
        }
        const double radius = lam * (2.0 - rng.uniform());
        const double s = radius / std::max(std::sqrt(norm2), 1e-300);
        for (int i = 0; i < n; ++i) dirs[j][static_cast<std::size_t>(i)] *= s;
    }

    ConstructionReport rep = frozen_core(inner, dirs);
    rep.surrogate_error = std::max(rep.surrogate_error, eps1);
    return rep;
}

// ---------------------------------------------------------------------------
// Barycentric diagnostic
// ---------------------------------------------------------------------------

std::vector<BarycentricRow> barycentric_diagnostic(const ConstructionRequest& req,
                                                   const std::vector<int>& k_range) {
    PipelineCtx ctx = make_poly_ctx(req);
    const std::size_t N = ctx.N_act;
    std::vector<BarycentricRow> rows;
    if (N < 2) return rows;

    const int max_k = k_range.empty() ? 0 : *std::max_element(k_range.begin(), k_range.end());
    const auto chain = req.schedule.intervals(0.0, max_k + 1);

    for (int k : k_range) {
        BarycentricRow row;
        row.k = k;
        const Interval Y = chain[static_cast<std::size_t>(k)];
        try {
            const MinimaxResult mm = best_approximant(req.sigma, Y, ctx.d_eff);
            double yk;
            if (mm.effectively_polynomial) {
                yk = Y.mid();
            } else {
                yk = alternation_ratio_check(req.sigma, mm).crossing;
            }
            const double lam_prime = std::min(yk - Y.lo, Y.hi - yk) / ctx.rX;
            auto c = mm.taylor_at(yk);
            auto dirs = seed_directions(ctx.n, ctx.d_eff, N, lam_prime, 0);

            // nu_hat(ghat_j): drop the constant coordinate.
            std::vector<std::vector<double>> pts(N, std::vector<double>(N - 1));
            Eigen::MatrixXd A(N, N);
            for (std::size_t j = 0; j < N; ++j) {
                const auto col = compose_affine(ctx.active, c, dirs[j], 0.0);
                for (std::size_t i = 1; i < N; ++i) {
                    pts[j][i - 1] = col[i];
                    A(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) = col[i];
                }
                A(static_cast<Eigen::Index>(N - 1), static_cast<Eigen::Index>(j)) = 1.0;
            }

            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            if (!lu.isInvertible()) {
                row.degenerate = true;
                rows.push_back(row);
                continue;
            }

            double cf = 0.0;
            for (int t = 0; t < ctx.m; ++t)
                cf = std::max(cf, ctx.targets.col(t).tail(static_cast<Eigen::Index>(N - 1)).norm());
            row.c_f = cf;

            Eigen::VectorXd rhs_zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
            rhs_zero(static_cast<Eigen::Index>(N - 1)) = 1.0;
            const Eigen::VectorXd b_zero = lu.solve(rhs_zero);

            double spread_f = 0.0, spread_zero = 0.0, coord_diff = 0.0;
            for (std::size_t j = 0; j < N; ++j)
                spread_zero = std::max(spread_zero,
                                       std::abs(b_zero(static_cast<Eigen::Index>(j)) - 1.0 / N));

            std::vector<double> heights(N);
            double hmax = 0.0, hmin = std::numeric_limits<double>::infinity();
            bool bound_ok = true;
            for (std::size_t j = 0; j < N; ++j) {
                heights[j] = simplex_height_diagnostic(pts, j);
                hmax = std::max(hmax, heights[j]);
                hmin = std::min(hmin, heights[j]);
            }

            for (int t = 0; t < ctx.m; ++t) {
                Eigen::VectorXd rhs_f(static_cast<Eigen::Index>(N));
                rhs_f.head(static_cast<Eigen::Index>(N - 1)) =
                    ctx.targets.col(t).tail(static_cast<Eigen::Index>(N - 1));
                rhs_f(static_cast<Eigen::Index>(N - 1)) = 1.0;
                const Eigen::VectorXd b_f = lu.solve(rhs_f);
                for (std::size_t j = 0; j < N; ++j) {
                    spread_f = std::max(spread_f,
                                        std::abs(b_f(static_cast<Eigen::Index>(j)) - 1.0 / N));
                    const double diff = std::abs(b_f(static_cast<Eigen::Index>(j)) -
                                                 b_zero(static_cast<Eigen::Index>(j)));
                    coord_diff = std::max(coord_diff, diff);
                    if (diff > cf / heights[j] * (1.0 + 1e-9) + 1e-12) bound_ok = false;
                }
            }
            row.spread_f = spread_f;
            row.spread_zero = spread_zero;
            row.max_coord_diff = coord_diff;
            row.height_max = hmax;
            row.height_min = hmin;
            row.bound_ok = bound_ok;
        } catch (const std::exception&) {
            row.degenerate = true;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string ConstructionReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "success,reason,N,m,padded_units,effective_degree,d_eps,scale_index,lambda0,"
          "crossing,alternation_ratio,minimax_error,solve_condition,vandermonde_margin,"
          "max_certified_error,lipschitz_slack,verification_points,max_coeff_l1,"
          "zero_sum_defect,error_bound_rhs,max_output_weight,min_direction_norm,"
          "surrogate_error,jitter\n";
    double max_cert = 0.0, max_l1 = 0.0;
    for (double e : certified_error) max_cert = std::max(max_cert, e);
    for (double c : coefficient_norm) max_l1 = std::max(max_l1, c);
    os << (success ? 1 : 0) << ',' << '"' << failure_reason << '"' << ','
       << weights.hidden_units() << ',' << weights.output_dim() << ',' << padded_units << ','
       << effective_degree << ',' << d_eps << ',' << scale_index_used << ',' << lambda0_used << ','
       << crossing << ',' << alternation_ratio << ',' << minimax_error << ','
       << vandermonde_condition << ',' << vandermonde_margin << ',' << max_cert << ','
       << lipschitz_slack << ',' << verification_points << ',' << max_l1 << ','
       << zero_sum_defect << ',' << error_bound_rhs << ',' << constraint_max_output_weight << ','
       << constraint_min_direction_norm << ',' << surrogate_error << ','
       << (jitter_applied ? 1 : 0) << '\n';
    return os.str();
}

}  // namespace polynet
