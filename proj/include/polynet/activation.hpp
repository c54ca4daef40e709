#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polynet {

/// A continuous scalar activation: either a named builtin or a sorted sample
/// table evaluated by piecewise-linear interpolation (linear extrapolation
/// beyond the first/last sample).
class ActivationSpec {
public:
    enum class Kind { Logistic, Tanh, Rectifier, Gaussian, Exp, Softplus, Abs, Square, Table };

    static ActivationSpec builtin(Kind k);
    static ActivationSpec builtin(const std::string& name);

    /// Requires at least 2 samples with strictly increasing abscissae.
    static ActivationSpec table(std::vector<std::pair<double, double>> samples,
                                std::optional<std::pair<double, double>> domain_hint = {});

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::optional<std::pair<double, double>>& domain_hint() const {
        return domain_hint_;
    }

    double operator()(double y) const;
    long double eval_l(long double y) const;

private:
    ActivationSpec() = default;
    Kind kind_ = Kind::Tanh;
    std::string name_ = "tanh";
    std::vector<double> xs_, ys_;  // table samples
    std::optional<std::pair<double, double>> domain_hint_;
};

}  // namespace polynet
