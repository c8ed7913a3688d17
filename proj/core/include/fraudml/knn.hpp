#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fraudml/matrix.hpp"

namespace fraudml {

struct KNNParams {
    std::size_t k = 5;  // odd, so neighbor votes cannot tie

    bool operator==(const KNNParams&) const = default;
};

// Plain Euclidean k-nearest-neighbour voter. Keeps the training set verbatim;
// the probability for a query is the class-1 fraction among its k nearest
// points. Distance ties break toward the lower training-row index.
class KnnModel {
public:
    KnnModel() = default;

    static KnnModel train(const Matrix& X, const std::vector<int>& y, const KNNParams& params);
    static KnnModel from_parts(Matrix X, std::vector<int> y, const KNNParams& params);

    double predict_one(std::span<const double> x) const;
    std::vector<double> predict_proba(const Matrix& X, int threads = 0) const;

    const Matrix& features() const { return X_; }
    const std::vector<int>& labels() const { return y_; }
    const KNNParams& params() const { return params_; }
    std::size_t n_features() const { return X_.cols(); }

    bool operator==(const KnnModel&) const = default;

private:
    Matrix X_;
    std::vector<int> y_;
    KNNParams params_;
};

}  // namespace fraudml
