#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace polynet {

struct ConstructionRequest;  // constructor.hpp

using VectorFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// Tensor evaluation grid over an axis-aligned box.
struct GridSpec {
    std::vector<double> lo, hi;          // per-axis bounds, lo < hi
    std::vector<std::size_t> resolution; // per-axis point counts, >= 2

    static GridSpec uniform(const std::vector<double>& lo,
                            const std::vector<double>& hi, std::size_t per_axis);

    std::size_t dimensions() const { return lo.size(); }
    std::size_t total_points() const;
    std::vector<double> point(std::size_t flat) const;
    double max_spacing() const;

    void validate(std::size_t cap = 10'000'000) const;
};

/// max over the grid, over output coordinates, of |f - g|.
double sup_error(const VectorFn& f, const VectorFn& g, const GridSpec& grid);

struct TrialSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> certified_errors;  // one per trial; NaN when not run
    std::vector<bool> success_flags;       // one per trial
    std::vector<bool> singular_flags;      // one per trial
    std::size_t singular_draws = 0;

    double success_fraction() const {
        return trials == 0 ? 0.0 : static_cast<double>(successes) / trials;
    }
    std::string to_csv() const;
};

/// Draws `draws` random weight sets (standard normal entries, seeded) and
/// reports how many have a nonsingular non-bias Vandermonde matrix at the
/// given relative tolerance.
TrialSummary density_trial(int n, int d, std::size_t draws, std::uint64_t seed,
                           double tol = 1e-10);

/// Runs construct_random_features once per seed; failures are recorded, not
/// raised.
TrialSummary random_feature_study(const ConstructionRequest& request,
                                  const std::vector<std::uint64_t>& seeds);

}  // namespace polynet
