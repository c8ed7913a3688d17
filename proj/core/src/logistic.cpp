#include "fraudml/logistic.hpp"

#include <cmath>
#include <string>

#include "fraudml/error.hpp"

namespace fraudml {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow for large |z|.
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double raw_score(std::span<const double> x, const std::vector<double>& w, double b) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[j];
    return z;
}

void check_inputs(const Matrix& X, const std::vector<int>& y, std::size_t dim) {
    if (X.rows() != y.size())
        throw DataError("logistic: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (X.cols() != dim) throw DataError("logistic: expected " + std::to_string(dim) + " features, got " + std::to_string(X.cols()));
}

}  // namespace

double logistic_loss(const Matrix& X, const std::vector<int>& y, const std::vector<double>& weights,
                     double bias, double l2) {
    check_inputs(X, y, weights.size());
    if (X.rows() == 0) throw DataError("logistic: empty dataset");
    double total = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const double z = raw_score(X.row(i), weights, bias);
        // BCE via softplus: -y z + log(1 + e^z), stable on both tails.
        total += softplus(z) - (y[i] == 1 ? z : 0.0);
    }
    double penalty = 0.0;
    for (double w : weights) penalty += w * w;
    return total / static_cast<double>(X.rows()) + 0.5 * l2 * penalty;
}

void logistic_gradient(const Matrix& X, const std::vector<int>& y, const std::vector<double>& weights,
                       double bias, double l2, std::vector<double>& grad_weights, double& grad_bias) {
    check_inputs(X, y, weights.size());
    if (X.rows() == 0) throw DataError("logistic: empty dataset");
    grad_weights.assign(weights.size(), 0.0);
    grad_bias = 0.0;
    const double inv_n = 1.0 / static_cast<double>(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) {
        auto x = X.row(i);
        const double err = sigmoid(raw_score(x, weights, bias)) - (y[i] == 1 ? 1.0 : 0.0);
        for (std::size_t j = 0; j < weights.size(); ++j) grad_weights[j] += err * x[j];
        grad_bias += err;
    }
    for (std::size_t j = 0; j < weights.size(); ++j)
        grad_weights[j] = grad_weights[j] * inv_n + l2 * weights[j];
    grad_bias *= inv_n;
}

LogisticModel fit_logistic(const Matrix& X, const std::vector<int>& y, const LogisticConfig& config,
                           std::vector<double>* loss_history) {
    if (X.rows() == 0) throw DataError("logistic: empty dataset");
    if (config.epochs < 0) throw UsageError("logistic: epochs must be >= 0");
    if (config.learning_rate <= 0.0) throw UsageError("logistic: learning_rate must be > 0");
    if (config.l2 < 0.0) throw UsageError("logistic: l2 must be >= 0");
    bool saw0 = false, saw1 = false;
    for (int label : y) {
        if (label == 0) saw0 = true;
        else if (label == 1) saw1 = true;
        else throw DataError("logistic: binary labels required, got " + std::to_string(label));
    }
    if (!saw0 || !saw1) throw TrainError("logistic: training data contains a single class");

    LogisticModel model;
    model.weights.assign(X.cols(), 0.0);
    model.bias = 0.0;
    model.training_config = config;
    if (loss_history) loss_history->clear();

    std::vector<double> grad(X.cols());
    double grad_bias = 0.0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const double loss = logistic_loss(X, y, model.weights, model.bias, config.l2);
        if (!std::isfinite(loss))
            throw TrainError("logistic: loss diverged at epoch " + std::to_string(epoch));
        if (loss_history) loss_history->push_back(loss);
        logistic_gradient(X, y, model.weights, model.bias, config.l2, grad, grad_bias);
        for (std::size_t j = 0; j < grad.size(); ++j) model.weights[j] -= config.learning_rate * grad[j];
        model.bias -= config.learning_rate * grad_bias;
    }
    const double final_loss = logistic_loss(X, y, model.weights, model.bias, config.l2);
    if (!std::isfinite(final_loss)) throw TrainError("logistic: loss diverged at final epoch");
    if (loss_history) loss_history->push_back(final_loss);
    return model;
}

std::vector<double> predict_proba_logistic(const LogisticModel& model, const Matrix& X) {
    if (X.cols() != model.weights.size())
        throw DataError("logistic: expected " + std::to_string(model.weights.size()) +
                        " features, got " + std::to_string(X.cols()));
    std::vector<double> probs(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i)
        probs[i] = sigmoid(raw_score(X.row(i), model.weights, model.bias));
    return probs;
}

}  // namespace fraudml
