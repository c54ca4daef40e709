#include "polynet/network.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace polynet {

void NetworkWeights::validate() const {
    if (W1.rows() < 2 || W1.cols() < 1)
        throw std::invalid_argument("NetworkWeights: W1 must be (n+1) x N with n,N >= 1");
    if (W2.rows() != W1.cols() + 1)
        throw std::invalid_argument("NetworkWeights: W2 must be (N+1) x m");
    if (W2.cols() < 1) throw std::invalid_argument("NetworkWeights: m must be >= 1");
}

double NetworkWeights::max_nonbias_output_weight() const {
    return W2.bottomRows(W2.rows() - 1).cwiseAbs().maxCoeff();
}

double NetworkWeights::min_direction_norm() const {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < hidden_units(); ++j) best = std::min(best, direction(j).norm());
    return best;
}

std::vector<double> forward(const NetworkWeights& w, const ActivationSpec& sigma,
                            const std::vector<double>& x) {
    const int n = w.input_dim(), m = w.output_dim(), N = w.hidden_units();
    if (x.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("forward: input dimension mismatch");

    std::vector<long double> acc(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) acc[t] = w.W2(0, t);
    for (int j = 0; j < N; ++j) {
        long double pre = w.W1(0, j);
        for (int i = 0; i < n; ++i)
            pre += static_cast<long double>(w.W1(i + 1, j)) * x[static_cast<std::size_t>(i)];
        const long double s = sigma.eval_l(pre);
        for (int t = 0; t < m; ++t)
            acc[static_cast<std::size_t>(t)] += static_cast<long double>(w.W2(j + 1, t)) * s;
    }
    std::vector<double> out(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t)
        out[static_cast<std::size_t>(t)] = static_cast<double>(acc[static_cast<std::size_t>(t)]);
    return out;
}

NetworkWeights eliminate_output_bias(const NetworkWeights& w, const ActivationSpec& sigma,
                                     double y0) {
    const double s0 = sigma(y0);
    if (std::abs(s0) <= 1e-12)
        throw std::invalid_argument("eliminate_output_bias: sigma(y0) too close to zero");
    const int n = w.input_dim(), m = w.output_dim(), N = w.hidden_units();

    NetworkWeights out;
    out.W1.resize(n + 1, N + 1);
    out.W1.leftCols(N) = w.W1;
    out.W1.col(N).setZero();
    out.W1(0, N) = y0;

    out.W2.resize(N + 2, m);
    out.W2.row(0).setZero();
    out.W2.middleRows(1, N) = w.W2.bottomRows(N);
    for (int t = 0; t < m; ++t) out.W2(N + 1, t) = w.W2(0, t) / s0;
    return out;
}

std::string to_json(const NetworkWeights& w, const std::string& sigma_kind) {
    nlohmann::json j;
    j["version"] = 1;
    j["n"] = w.input_dim();
    j["m"] = w.output_dim();
    j["N"] = w.hidden_units();
    j["sigma_kind"] = sigma_kind;
    std::vector<double> w1, w2;
    for (int r = 0; r < w.W1.rows(); ++r)
        for (int c = 0; c < w.W1.cols(); ++c) w1.push_back(w.W1(r, c));
    for (int r = 0; r < w.W2.rows(); ++r)
        for (int c = 0; c < w.W2.cols(); ++c) w2.push_back(w.W2(r, c));
    j["W1"] = w1;
    j["W2"] = w2;
    return j.dump(2);
}

NetworkWeights from_json(const std::string& text, std::string* sigma_kind) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::runtime_error("network JSON: unsupported or missing version");
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const int N = j.at("N").get<int>();
    if (sigma_kind) *sigma_kind = j.at("sigma_kind").get<std::string>();
    const auto w1 = j.at("W1").get<std::vector<double>>();
    const auto w2 = j.at("W2").get<std::vector<double>>();
    if (w1.size() != static_cast<std::size_t>((n + 1) * N) ||
        w2.size() != static_cast<std::size_t>((N + 1) * m))
        throw std::runtime_error("network JSON: weight array size mismatch");
    NetworkWeights out;
    out.W1.resize(n + 1, N);
    out.W2.resize(N + 1, m);
    std::size_t k = 0;
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c < N; ++c) out.W1(r, c) = w1[k++];
    k = 0;
    for (int r = 0; r <= N; ++r)
        for (int c = 0; c < m; ++c) out.W2(r, c) = w2[k++];
    out.validate();
    return out;
}

}  // namespace polynet
