#include "polynet/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polynet/algebra.hpp"
#include "polynet/constructor.hpp"
#include "polynet/rng.hpp"

namespace polynet {

GridSpec GridSpec::uniform(const std::vector<double>& lo, const std::vector<double>& hi,
                           std::size_t per_axis) {
    GridSpec g;
    g.lo = lo;
    g.hi = hi;
    g.resolution.assign(lo.size(), per_axis);
    return g;
}

std::size_t GridSpec::total_points() const {
    std::size_t t = 1;
    for (std::size_t r : resolution) t *= r;
    return t;
}

std::vector<double> GridSpec::point(std::size_t flat) const {
    std::vector<double> x(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const std::size_t r = resolution[i];
        const std::size_t idx = flat % r;
        flat /= r;
        x[i] = r == 1 ? lo[i]
                      : lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx) /
                            static_cast<double>(r - 1);
    }
    return x;
}

double GridSpec::max_spacing() const {
    double h = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (resolution[i] > 1)
            h = std::max(h, (hi[i] - lo[i]) / static_cast<double>(resolution[i] - 1));
    }
    return h;
}

void GridSpec::validate(std::size_t cap) const {
    if (lo.empty() || lo.size() != hi.size() || lo.size() != resolution.size())
        throw std::invalid_argument("GridSpec: inconsistent axes");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i])) throw std::invalid_argument("GridSpec: lo > hi");
        if (resolution[i] < 2) throw std::invalid_argument("GridSpec: resolution < 2");
    }
    if (total_points() > cap) throw std::invalid_argument("GridSpec: total points above cap");
}

double sup_error(const VectorFn& f, const VectorFn& g, const GridSpec& grid) {
    grid.validate();
    double worst = 0.0;
    const std::size_t total = grid.total_points();
    for (std::size_t i = 0; i < total; ++i) {
        const auto x = grid.point(i);
        std::vector<double> fv, gv;
        try {
            fv = f(x);
            gv = g(x);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sup_error: evaluation failed at (";
            for (std::size_t k = 0; k < x.size(); ++k) os << (k ? "," : "") << x[k];
            os << "): " << e.what();
            throw std::runtime_error(os.str());
        }
        if (fv.size() != gv.size())
            throw std::runtime_error("sup_error: output dimension mismatch");
        for (std::size_t t = 0; t < fv.size(); ++t)
            worst = std::max(worst, std::abs(fv[t] - gv[t]));
    }
    return worst;
}

std::string TrialSummary::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "trial,seed,success,singular,certified_error\n";
    for (std::size_t i = 0; i < trials; ++i) {
        os << i << ',' << (i < seeds.size() ? seeds[i] : 0) << ','
           << (i < success_flags.size() && success_flags[i] ? 1 : 0) << ','
           << (i < singular_flags.size() && singular_flags[i] ? 1 : 0) << ',';
        if (i < certified_errors.size() && std::isfinite(certified_errors[i]))
            os << certified_errors[i];
        os << '\n';
    }
    return os.str();
}

TrialSummary density_trial(int n, int d, std::size_t draws, std::uint64_t seed, double tol) {
    if (draws < 1) throw std::invalid_argument("density_trial: draws must be >= 1");
    const MonomialBasis basis = enumerate_basis(n, d);
    const std::size_t N = basis.size();
    Rng rng(seed);
    TrialSummary out;
    out.trials = draws;
    for (std::size_t t = 0; t < draws; ++t) {
        std::vector<std::vector<double>> pts(N, std::vector<double>(static_cast<std::size_t>(n)));
        for (auto& p : pts)
            for (double& v : p) v = rng.normal();
        const auto check = is_nonsingular(build_vandermonde(pts, basis), tol);
        out.success_flags.push_back(check.nonsingular);
        out.singular_flags.push_back(!check.nonsingular);
        if (check.nonsingular) ++out.successes;
        else ++out.singular_draws;
    }
    return out;
}

TrialSummary random_feature_study(const ConstructionRequest& request,
                                  const std::vector<std::uint64_t>& seeds) {
    TrialSummary out;
    out.trials = seeds.size();
    out.seeds = seeds;
    out.certified_errors.assign(seeds.size(), std::numeric_limits<double>::quiet_NaN());
    out.success_flags.assign(seeds.size(), false);
    out.singular_flags.assign(seeds.size(), false);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        ConstructionRequest req = request;
        if (!req.frozen_random_first_layer)
            req.frozen_random_first_layer = ConstructionRequest::FrozenFirstLayer{};
        req.frozen_random_first_layer->seed = seeds[i];
        try {
            const ConstructionReport rep = construct_random_features(req);
            if (rep.singular_draw) {
                ++out.singular_draws;
                out.singular_flags[i] = true;
            }
            if (rep.success) {
                ++out.successes;
                out.success_flags[i] = true;
                double worst = 0.0;
                for (double e : rep.certified_error) worst = std::max(worst, e);
                out.certified_errors[i] = worst;
            }
        } catch (const std::exception&) {
            // failure recorded as data
        }
    }
    return out;
}

}  // namespace polynet
