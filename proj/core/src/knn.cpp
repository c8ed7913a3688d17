#include "fraudml/knn.hpp"

#include <algorithm>
#include <string>

#include "fraudml/error.hpp"
#include "fraudml/parallel.hpp"

namespace fraudml {

KnnModel KnnModel::train(const Matrix& X, const std::vector<int>& y, const KNNParams& params) {
    if (X.rows() == 0) throw DataError("knn: empty dataset");
    if (X.rows() != y.size())
        throw DataError("knn: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (params.k < 1 || params.k % 2 == 0) throw UsageError("knn: k must be a positive odd number");
    if (params.k > X.rows())
        throw TrainError("knn: k (" + std::to_string(params.k) + ") exceeds training size (" +
                         std::to_string(X.rows()) + ")");
    for (int label : y)
        if (label != 0 && label != 1)
            throw DataError("knn: binary labels required, got " + std::to_string(label));

    KnnModel model;
    model.X_ = X;
    model.y_ = y;
    model.params_ = params;
    return model;
}

KnnModel KnnModel::from_parts(Matrix X, std::vector<int> y, const KNNParams& params) {
    if (X.rows() == 0 || X.rows() != y.size()) throw DataError("knn: malformed stored model");
    if (params.k < 1 || params.k % 2 == 0 || params.k > X.rows())
        throw DataError("knn: malformed stored model (k)");
    KnnModel model;
    model.X_ = std::move(X);
    model.y_ = std::move(y);
    model.params_ = params;
    return model;
}

double KnnModel::predict_one(std::span<const double> x) const {
    if (X_.rows() == 0) throw TrainError("knn: model is untrained");
    if (x.size() != X_.cols())
        throw DataError("knn: expected " + std::to_string(X_.cols()) + " features, got " +
                        std::to_string(x.size()));

    std::vector<std::pair<double, std::size_t>> dist(X_.rows());
    for (std::size_t i = 0; i < X_.rows(); ++i) {
        auto row = X_.row(i);
        double d2 = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double diff = row[j] - x[j];
            d2 += diff * diff;
        }
        dist[i] = {d2, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(params_.k), dist.end());

    std::size_t votes1 = 0;
    for (std::size_t i = 0; i < params_.k; ++i) votes1 += static_cast<std::size_t>(y_[dist[i].second]);
    return static_cast<double>(votes1) / static_cast<double>(params_.k);
}

std::vector<double> KnnModel::predict_proba(const Matrix& X, int threads) const {
    std::vector<double> probs(X.rows());
    parallel_for(X.rows(), threads, [&](std::size_t i) { probs[i] = predict_one(X.row(i)); });
    return probs;
}

}  // namespace fraudml
