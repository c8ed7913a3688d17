#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraudml/matrix.hpp"

namespace fraudml {

struct MLPParams {
    std::vector<std::size_t> hidden_layers{64};
    double learning_rate = 0.01;
    int epochs = 100;
    std::size_t batch_size = 32;
    std::uint64_t seed = 0;

    bool operator==(const MLPParams&) const = default;
};

struct MlpLayer {
    Matrix weights;            // out x in
    std::vector<double> bias;  // out

    bool operator==(const MlpLayer&) const = default;
};

// Mean binary cross-entropy of the network (ReLU hidden units, logistic
// output) against 0/1 labels. Exposed so gradients can be cross-checked
// numerically.
double mlp_loss(const std::vector<MlpLayer>& layers, const Matrix& X, const std::vector<int>& y);

// Backprop gradients of mlp_loss, in the same layout as the layers.
std::vector<MlpLayer> mlp_gradients(const std::vector<MlpLayer>& layers, const Matrix& X,
                                    const std::vector<int>& y);

// Feed-forward net trained by mini-batch SGD. Weights start Glorot-uniform
// from the model seed; each epoch reshuffles sample order with its own
// derived seed, so runs are reproducible end to end.
class MlpModel {
public:
    MlpModel() = default;

    static MlpModel train(const Matrix& X, const std::vector<int>& y, const MLPParams& params,
                          std::vector<double>* loss_history = nullptr);
    static MlpModel from_parts(std::vector<MlpLayer> layers, const MLPParams& params);

    double predict_one(std::span<const double> x) const;
    std::vector<double> predict_proba(const Matrix& X) const;

    const std::vector<MlpLayer>& layers() const { return layers_; }
    std::size_t n_features() const { return layers_.empty() ? 0 : layers_.front().weights.cols(); }
    const MLPParams& params() const { return params_; }

    bool operator==(const MlpModel&) const = default;

private:
    std::vector<MlpLayer> layers_;
    MLPParams params_;
};

}  // namespace fraudml
