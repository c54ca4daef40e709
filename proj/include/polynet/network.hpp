#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "polynet/activation.hpp"

namespace polynet {

/// Single-hidden-layer weights. Biases are stored as row 0 of each matrix,
/// matching the (1, x) input concatenation convention.
struct NetworkWeights {
    Eigen::MatrixXd W1;  // (n+1) x N
    Eigen::MatrixXd W2;  // (N+1) x m

    int input_dim() const { return static_cast<int>(W1.rows()) - 1; }
    int output_dim() const { return static_cast<int>(W2.cols()); }
    int hidden_units() const { return static_cast<int>(W1.cols()); }

    /// Non-bias part of the j-th first-layer column (the direction vector).
    Eigen::VectorXd direction(int j) const { return W1.col(j).tail(input_dim()); }

    double max_nonbias_output_weight() const;
    double min_direction_norm() const;

    void validate() const;  // shape consistency
};

/// rho_W^sigma: no activation at the output layer. Accumulates in long double.
std::vector<double> forward(const NetworkWeights& w, const ActivationSpec& sigma,
                            const std::vector<double>& x);

/// Replaces the output biases with an (N+1)-th hidden unit held at sigma(y0):
/// first-layer bias y0, zero direction, output weight c / sigma(y0) per
/// coordinate. The forward map is unchanged. Requires |sigma(y0)| > 1e-12.
NetworkWeights eliminate_output_bias(const NetworkWeights& w, const ActivationSpec& sigma,
                                     double y0);

/// Versioned JSON document {version, n, m, N, sigma_kind, W1, W2} with
/// row-major weight arrays. Floats round-trip exactly.
std::string to_json(const NetworkWeights& w, const std::string& sigma_kind);
NetworkWeights from_json(const std::string& text, std::string* sigma_kind = nullptr);

}  // namespace polynet
