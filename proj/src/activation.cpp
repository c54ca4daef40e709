#include "polynet/activation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polynet {

ActivationSpec ActivationSpec::builtin(Kind k) {
    ActivationSpec s;
    s.kind_ = k;
    switch (k) {
        case Kind::Logistic: s.name_ = "logistic"; break;
        case Kind::Tanh: s.name_ = "tanh"; break;
        case Kind::Rectifier: s.name_ = "rectifier"; break;
        case Kind::Gaussian: s.name_ = "gaussian"; break;
        case Kind::Exp: s.name_ = "exp"; break;
        case Kind::Softplus: s.name_ = "softplus"; break;
        case Kind::Abs: s.name_ = "abs"; break;
        case Kind::Square: s.name_ = "square"; break;
        case Kind::Table:
            throw std::invalid_argument("use ActivationSpec::table for table kind");
    }
    return s;
}

ActivationSpec ActivationSpec::builtin(const std::string& name) {
    if (name == "logistic") return builtin(Kind::Logistic);
    if (name == "tanh") return builtin(Kind::Tanh);
    if (name == "rectifier" || name == "relu") return builtin(Kind::Rectifier);
    if (name == "gaussian") return builtin(Kind::Gaussian);
    if (name == "exp") return builtin(Kind::Exp);
    if (name == "softplus") return builtin(Kind::Softplus);
    if (name == "abs") return builtin(Kind::Abs);
    if (name == "square") return builtin(Kind::Square);
    throw std::invalid_argument("unknown activation: " + name);
}

ActivationSpec ActivationSpec::table(
    std::vector<std::pair<double, double>> samples,
    std::optional<std::pair<double, double>> domain_hint) {
    if (samples.size() < 2)
        throw std::invalid_argument("table activation needs >= 2 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i - 1].first < samples[i].first))
            throw std::invalid_argument("table abscissae must strictly increase");
    }
    ActivationSpec s;
    s.kind_ = Kind::Table;
    s.name_ = "table";
    s.xs_.reserve(samples.size());
    s.ys_.reserve(samples.size());
    for (auto& [x, y] : samples) {
        s.xs_.push_back(x);
        s.ys_.push_back(y);
    }
    s.domain_hint_ = domain_hint;
    return s;
}

long double ActivationSpec::eval_l(long double y) const {
    switch (kind_) {
        case Kind::Logistic: return 1.0L / (1.0L + std::exp(-y));
        case Kind::Tanh: return std::tanh(y);
        case Kind::Rectifier: return y > 0.0L ? y : 0.0L;
        case Kind::Gaussian: return std::exp(-y * y);
        case Kind::Exp: return std::exp(y);
        case Kind::Softplus:
            // log1p(exp(y)) without overflow for large y.
            return y > 30.0L ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y));
        case Kind::Abs: return y < 0.0L ? -y : y;
        case Kind::Square: return y * y;
        case Kind::Table: break;
    }
    const double yd = static_cast<double>(y);
    auto it = std::lower_bound(xs_.begin(), xs_.end(), yd);
    std::size_t hi;
    if (it == xs_.begin()) hi = 1;
    else if (it == xs_.end()) hi = xs_.size() - 1;
    else hi = static_cast<std::size_t>(it - xs_.begin());
    const std::size_t lo = hi - 1;
    const long double t = (y - xs_[lo]) / (static_cast<long double>(xs_[hi]) - xs_[lo]);
    return ys_[lo] + t * (static_cast<long double>(ys_[hi]) - ys_[lo]);
}

double ActivationSpec::operator()(double y) const {
    return static_cast<double>(eval_l(y));
}

}  // namespace polynet
