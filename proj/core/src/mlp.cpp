#include "fraudml/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fraudml/error.hpp"
#include "fraudml/logistic.hpp"  // sigmoid
#include "fraudml/rng.hpp"

namespace fraudml {

namespace {

void check_layers(const std::vector<MlpLayer>& layers) {
    if (layers.empty()) throw DataError("mlp: empty layer list");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].weights.rows() == 0 || layers[l].weights.cols() == 0)
            throw DataError("mlp: empty layer " + std::to_string(l));
        if (layers[l].bias.size() != layers[l].weights.rows())
            throw DataError("mlp: bias size mismatch in layer " + std::to_string(l));
        if (l > 0 && layers[l].weights.cols() != layers[l - 1].weights.rows())
            throw DataError("mlp: shape mismatch between layers " + std::to_string(l - 1) + " and " +
                            std::to_string(l));
    }
    if (layers.back().weights.rows() != 1) throw DataError("mlp: output layer must have one unit");
}

// Pre-activations for every layer; the activation is relu except at the top.
void forward(const std::vector<MlpLayer>& layers, std::span<const double> x,
             std::vector<std::vector<double>>& zs) {
    zs.resize(layers.size());
    std::span<const double> input = x;
    std::vector<double> activated;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const MlpLayer& layer = layers[l];
        zs[l].assign(layer.weights.rows(), 0.0);
        for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
            auto w = layer.weights.row(r);
            double z = layer.bias[r];
            for (std::size_t c = 0; c < w.size(); ++c) z += w[c] * input[c];
            zs[l][r] = z;
        }
        if (l + 1 < layers.size()) {
            activated.assign(zs[l].size(), 0.0);
            for (std::size_t r = 0; r < zs[l].size(); ++r) activated[r] = std::max(0.0, zs[l][r]);
            input = activated;
        }
    }
}

double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

void check_data(const std::vector<MlpLayer>& layers, const Matrix& X, const std::vector<int>& y) {
    check_layers(layers);
    if (X.rows() == 0) throw DataError("mlp: empty dataset");
    if (X.rows() != y.size())
        throw DataError("mlp: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (X.cols() != layers.front().weights.cols())
        throw DataError("mlp: expected " + std::to_string(layers.front().weights.cols()) +
                        " features, got " + std::to_string(X.cols()));
}

// Accumulates sample gradients into grads (not averaged here).
void backprop_one(const std::vector<MlpLayer>& layers, std::span<const double> x, int label,
                  std::vector<std::vector<double>>& zs, std::vector<MlpLayer>& grads) {
    forward(layers, x, zs);
    const std::size_t top = layers.size() - 1;

    // delta for the top layer: p - y (BCE through the logistic output)
    std::vector<double> delta{sigmoid(zs[top][0]) - (label == 1 ? 1.0 : 0.0)};
    for (std::size_t l = layers.size(); l-- > 0;) {
        // activation feeding layer l
        std::vector<double> below;
        std::span<const double> input = x;
        if (l > 0) {
            below.assign(zs[l - 1].size(), 0.0);
            for (std::size_t r = 0; r < below.size(); ++r) below[r] = std::max(0.0, zs[l - 1][r]);
            input = below;
        }
        for (std::size_t r = 0; r < layers[l].weights.rows(); ++r) {
            auto grow = grads[l].weights.row(r);
            for (std::size_t c = 0; c < grow.size(); ++c) grow[c] += delta[r] * input[c];
            grads[l].bias[r] += delta[r];
        }
        if (l == 0) break;
        std::vector<double> next(zs[l - 1].size(), 0.0);
        for (std::size_t r = 0; r < layers[l].weights.rows(); ++r) {
            auto w = layers[l].weights.row(r);
            for (std::size_t c = 0; c < w.size(); ++c) next[c] += w[c] * delta[r];
        }
        for (std::size_t c = 0; c < next.size(); ++c)
            if (zs[l - 1][c] <= 0.0) next[c] = 0.0;  // relu gate
        delta = std::move(next);
    }
}

std::vector<MlpLayer> zero_like(const std::vector<MlpLayer>& layers) {
    std::vector<MlpLayer> grads(layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        grads[l].weights = Matrix(layers[l].weights.rows(), layers[l].weights.cols(), 0.0);
        grads[l].bias.assign(layers[l].bias.size(), 0.0);
    }
    return grads;
}

}  // namespace

double mlp_loss(const std::vector<MlpLayer>& layers, const Matrix& X, const std::vector<int>& y) {
    check_data(layers, X, y);
    std::vector<std::vector<double>> zs;
    double total = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) {
        forward(layers, X.row(i), zs);
        const double z = zs.back()[0];
        total += softplus(z) - (y[i] == 1 ? z : 0.0);
    }
    return total / static_cast<double>(X.rows());
}

std::vector<MlpLayer> mlp_gradients(const std::vector<MlpLayer>& layers, const Matrix& X,
                                    const std::vector<int>& y) {
    check_data(layers, X, y);
    std::vector<MlpLayer> grads = zero_like(layers);
    std::vector<std::vector<double>> zs;
    for (std::size_t i = 0; i < X.rows(); ++i) backprop_one(layers, X.row(i), y[i], zs, grads);
    const double inv_n = 1.0 / static_cast<double>(X.rows());
    for (MlpLayer& g : grads) {
        for (std::size_t r = 0; r < g.weights.rows(); ++r)
            for (double& v : g.weights.row(r)) v *= inv_n;
        for (double& v : g.bias) v *= inv_n;
    }
    return grads;
}

MlpModel MlpModel::train(const Matrix& X, const std::vector<int>& y, const MLPParams& params,
                         std::vector<double>* loss_history) {
    if (X.rows() == 0) throw DataError("mlp: empty dataset");
    if (X.rows() != y.size())
        throw DataError("mlp: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (params.learning_rate <= 0.0) throw UsageError("mlp: learning_rate must be > 0");
    if (params.epochs < 0) throw UsageError("mlp: epochs must be >= 0");
    if (params.batch_size < 1) throw UsageError("mlp: batch_size must be >= 1");
    for (std::size_t width : params.hidden_layers)
        if (width < 1) throw UsageError("mlp: hidden layer widths must be >= 1");
    bool saw0 = false, saw1 = false;
    for (int label : y) {
        if (label == 0) saw0 = true;
        else if (label == 1) saw1 = true;
        else throw DataError("mlp: binary labels required, got " + std::to_string(label));
    }
    if (!saw0 || !saw1) throw TrainError("mlp: training data contains a single class");

    // Glorot-uniform weights, zero biases, one init stream across all layers.
    MlpModel model;
    model.params_ = params;
    Rng init_rng(derive_seed(params.seed, "mlp_init"));
    std::size_t fan_in = X.cols();
    std::vector<std::size_t> widths = params.hidden_layers;
    widths.push_back(1);
    for (std::size_t width : widths) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + width));
        MlpLayer layer;
        layer.weights = Matrix(width, fan_in, 0.0);
        layer.bias.assign(width, 0.0);
        for (std::size_t r = 0; r < width; ++r)
            for (double& w : layer.weights.row(r)) w = uniform(init_rng, -limit, limit);
        model.layers_.push_back(std::move(layer));
        fan_in = width;
    }

    if (loss_history) {
        loss_history->clear();
        loss_history->push_back(mlp_loss(model.layers_, X, y));
    }

    std::vector<std::size_t> order(X.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::vector<double>> zs;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        Rng epoch_rng(derive_seed(params.seed, "mlp_epoch", static_cast<std::uint64_t>(epoch)));
        shuffle(order, epoch_rng);
        for (std::size_t start = 0; start < order.size(); start += params.batch_size) {
            const std::size_t stop = std::min(order.size(), start + params.batch_size);
            std::vector<MlpLayer> grads = zero_like(model.layers_);
            for (std::size_t i = start; i < stop; ++i)
                backprop_one(model.layers_, X.row(order[i]), y[order[i]], zs, grads);
            const double step = params.learning_rate / static_cast<double>(stop - start);
            for (std::size_t l = 0; l < model.layers_.size(); ++l) {
                MlpLayer& layer = model.layers_[l];
                for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
                    auto w = layer.weights.row(r);
                    auto g = grads[l].weights.row(r);
                    for (std::size_t c = 0; c < w.size(); ++c) w[c] -= step * g[c];
                }
                for (std::size_t r = 0; r < layer.bias.size(); ++r)
                    layer.bias[r] -= step * grads[l].bias[r];
            }
        }
        const double loss = mlp_loss(model.layers_, X, y);
        if (!std::isfinite(loss)) throw TrainError("mlp: loss diverged at epoch " + std::to_string(epoch));
        if (loss_history) loss_history->push_back(loss);
    }
    return model;
}

MlpModel MlpModel::from_parts(std::vector<MlpLayer> layers, const MLPParams& params) {
    check_layers(layers);
    MlpModel model;
    model.layers_ = std::move(layers);
    model.params_ = params;
    return model;
}

double MlpModel::predict_one(std::span<const double> x) const {
    if (layers_.empty()) throw TrainError("mlp: model is untrained");
    if (x.size() != n_features())
        throw DataError("mlp: expected " + std::to_string(n_features()) + " features, got " +
                        std::to_string(x.size()));
    std::vector<std::vector<double>> zs;
    forward(layers_, x, zs);
    return sigmoid(zs.back()[0]);
}

std::vector<double> MlpModel::predict_proba(const Matrix& X) const {
    std::vector<double> probs(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) probs[i] = predict_one(X.row(i));
    return probs;
}

}  // namespace fraudml
