#include "fraudml/ensemble.hpp"

#include <string>

#include "fraudml/error.hpp"
#include "fraudml/metrics.hpp"

namespace fraudml {

namespace {

void check_weights(const EnsembleWeights& weights) {
    for (double w : weights.values)
        if (w < 0.0) throw UsageError("ensemble: weights must be >= 0");
    if (weights.sum() <= 0.0) throw UsageError("ensemble: at least one weight must be positive");
}

}  // namespace

EnsembleWeights normalize_weights(const EnsembleWeights& weights) {
    check_weights(weights);
    const double total = weights.sum();
    EnsembleWeights out = weights;
    for (double& w : out.values) w /= total;
    return out;
}

std::vector<double> blend_probabilities(const std::array<std::vector<double>, 4>& probs,
                                        const EnsembleWeights& weights) {
    check_weights(weights);
    const std::size_t n = probs[0].size();
    for (const auto& p : probs)
        if (p.size() != n) throw DataError("ensemble: probability vectors differ in length");

    std::vector<double> blended(n, 0.0);
    const double total = weights.sum();
    for (std::size_t m = 0; m < 4; ++m) {
        const double w = weights[m];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) blended[i] += w * probs[m][i];
    }
    for (double& p : blended) p /= total;
    return blended;
}

std::vector<double> ensemble_predict_proba(const std::array<TrainedModel, 4>& models, const Matrix& X,
                                           const EnsembleWeights& weights) {
    check_weights(weights);
    std::array<std::vector<double>, 4> probs;
    for (std::size_t m = 0; m < 4; ++m) {
        if (model_kind(models[m]) != kModelKinds[m])
            throw UsageError("ensemble: models must be in dt, rf, knn, mlp order");
        probs[m] = predict_proba(models[m], X);
    }
    return blend_probabilities(probs, weights);
}

std::string selection_metric_name(SelectionMetric metric) {
    switch (metric) {
        case SelectionMetric::Accuracy: return "accuracy";
        case SelectionMetric::MacroF1: return "macro_f1";
    }
    throw UsageError("unknown selection metric");
}

SelectionMetric selection_metric_from_name(const std::string& name) {
    if (name == "accuracy") return SelectionMetric::Accuracy;
    if (name == "macro_f1") return SelectionMetric::MacroF1;
    throw UsageError("unknown selection metric '" + name + "' (want accuracy or macro_f1)");
}

GridSearchResult grid_search_weights(const std::array<std::vector<double>, 4>& val_probs,
                                     const std::vector<int>& y_val, const WeightGrid& grid,
                                     double threshold) {
    for (const auto& candidates : grid.candidates) {
        if (candidates.empty()) throw UsageError("grid search: empty candidate list");
        for (double w : candidates)
            if (w < 0.0) throw UsageError("grid search: candidate weights must be >= 0");
    }
    if (y_val.empty()) throw DataError("grid search: empty validation set");
    if (val_probs[0].size() != y_val.size())
        throw DataError("grid search: probabilities (" + std::to_string(val_probs[0].size()) +
                        ") != labels (" + std::to_string(y_val.size()) + ")");

    GridSearchResult result;
    bool found = false;
    EnsembleWeights weights;
    for (double w0 : grid.candidates[0]) {
        weights[0] = w0;
        for (double w1 : grid.candidates[1]) {
            weights[1] = w1;
            for (double w2 : grid.candidates[2]) {
                weights[2] = w2;
                for (double w3 : grid.candidates[3]) {
                    weights[3] = w3;
                    if (weights.sum() <= 0.0) continue;
                    const std::vector<double> blended = blend_probabilities(val_probs, weights);
                    const std::vector<int> predicted = labels_from_proba(blended, threshold);
                    const ClassificationMetrics metrics = metrics_from_confusion(confusion(y_val, predicted));
                    const double score = grid.metric == SelectionMetric::Accuracy ? metrics.accuracy
                                                                                  : metrics.macro_f1;
                    result.table.push_back({weights, score, metrics.accuracy});
                    // Strict improvement keeps the earliest (smallest) combo on ties.
                    if (!found || score > result.score ||
                        (score == result.score && metrics.accuracy > result.accuracy)) {
                        found = true;
                        result.best = weights;
                        result.score = score;
                        result.accuracy = metrics.accuracy;
                    }
                }
            }
        }
    }
    if (!found) throw UsageError("grid search: no non-zero weight combination in the grid");
    return result;
}

GridSearchResult grid_search_weights(const std::array<TrainedModel, 4>& models, const Matrix& X_val,
                                     const std::vector<int>& y_val, const WeightGrid& grid,
                                     double threshold) {
    std::array<std::vector<double>, 4> probs;
    for (std::size_t m = 0; m < 4; ++m) {
        if (model_kind(models[m]) != kModelKinds[m])
            throw UsageError("ensemble: models must be in dt, rf, knn, mlp order");
        probs[m] = predict_proba(models[m], X_val);
    }
    return grid_search_weights(probs, y_val, grid, threshold);
}

}  // namespace fraudml
