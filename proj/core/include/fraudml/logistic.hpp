#pragma once

#include <cstdint>
#include <vector>

#include "fraudml/matrix.hpp"

namespace fraudml {

struct LogisticConfig {
    double learning_rate = 0.1;
    int epochs = 300;
    double l2 = 1e-4;
    std::uint64_t seed = 0;  // echoed into the model; full-batch fitting is deterministic

    bool operator==(const LogisticConfig&) const = default;
};

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    LogisticConfig training_config;
};

double sigmoid(double z);

// Mean binary cross-entropy plus 0.5 * l2 * ||w||^2 (bias unpenalized).
double logistic_loss(const Matrix& X, const std::vector<int>& y, const std::vector<double>& weights,
                     double bias, double l2);

void logistic_gradient(const Matrix& X, const std::vector<int>& y, const std::vector<double>& weights,
                       double bias, double l2, std::vector<double>& grad_weights, double& grad_bias);

// Full-batch gradient descent from zero-initialized parameters for
// config.epochs steps. When loss_history is given it receives the loss
// before each step plus the final loss (epochs + 1 entries). Diverging to a
// non-finite loss is an error.
LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y, const LogisticConfig& config,
                           std::vector<double>* loss_history = nullptr);

// sigma(w . x + b) per row.
std::vector<double> predict_proba_logistic(const LogisticModel& model, const Matrix& X);

}  // namespace fraudml
