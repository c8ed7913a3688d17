#include "fraudml/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fraudml/error.hpp"
#include "fraudml/folds.hpp"
#include "fraudml/parallel.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

namespace {

void check_config(const ResampleConfig& config) {
    if (!(config.target_ratio > 0.0) || config.target_ratio > 1.0)
        throw UsageError("resample: target_ratio must be in (0, 1]");
    if (config.cv_folds < 2) throw UsageError("resample: cv_folds must be >= 2");
}

}  // namespace

HardnessScores hardness_scores(const Matrix& X, const std::vector<int>& y, const ResampleConfig& config) {
    check_config(config);
    if (X.rows() != y.size())
        throw DataError("resample: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");

    const FoldPlan plan = stratified_kfold(y, config.cv_folds, derive_seed(config.seed, "iht_folds"));

    HardnessScores out;
    out.scores.assign(y.size(), 0.0);
    out.fold_assignment.assign(plan.assignments.begin(), plan.assignments.end());

    parallel_for(static_cast<std::size_t>(plan.k), config.threads, [&](std::size_t fold) {
        const std::vector<std::size_t> train = plan.train_indices(fold);
        const std::vector<std::size_t> test = plan.test_indices(fold);
        Matrix X_train = X.take_rows(train);
        std::vector<int> y_train(train.size());
        for (std::size_t i = 0; i < train.size(); ++i) y_train[i] = y[train[i]];

        LogisticConfig lr = config.lr;
        lr.seed = derive_seed(config.seed, "iht_lr", fold);
        const LogisticModel model = fit_logistic(X_train, y_train, lr);

        const std::vector<double> probs = predict_proba_logistic(model, X.take_rows(test));
        for (std::size_t i = 0; i < test.size(); ++i) {
            const std::size_t idx = test[i];
            const double p_true = y[idx] == 1 ? probs[i] : 1.0 - probs[i];
            out.scores[idx] = 1.0 - p_true;
        }
    });
    return out;
}

ResampleResult iht_undersample(const Matrix& X, const std::vector<int>& y, const ResampleConfig& config) {
    check_config(config);
    if (X.rows() != y.size())
        throw DataError("resample: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");

    std::size_t count0 = 0, count1 = 0;
    for (int label : y) {
        if (label == 0) ++count0;
        else if (label == 1) ++count1;
        else throw DataError("resample: binary labels required, got " + std::to_string(label));
    }
    if (count0 == 0 || count1 == 0) throw DataError("resample: both classes required");

    // Ties count class 1 as the minority, so a perfectly balanced input stays put.
    const int majority_label = count1 < count0 ? 0 : (count0 < count1 ? 1 : 0);
    const std::size_t minority_count = std::min(count0, count1);
    const std::size_t majority_count = std::max(count0, count1);

    const auto target = static_cast<std::size_t>(
        std::llround(static_cast<double>(minority_count) / config.target_ratio));
    if (target < 1) throw DataError("resample: target majority count < 1");

    ResampleResult result;
    if (target >= majority_count) {
        result.kept_indices.resize(y.size());
        std::iota(result.kept_indices.begin(), result.kept_indices.end(), std::size_t{0});
    } else {
        const HardnessScores hardness = hardness_scores(X, y, config);
        std::vector<std::size_t> majority;
        majority.reserve(majority_count);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (y[i] == majority_label) majority.push_back(i);
        // Hardest first; equal scores fall back to the earlier row.
        std::sort(majority.begin(), majority.end(), [&](std::size_t a, std::size_t b) {
            if (hardness.scores[a] != hardness.scores[b]) return hardness.scores[a] > hardness.scores[b];
            return a < b;
        });
        std::vector<char> removed(y.size(), 0);
        for (std::size_t i = 0; i < majority_count - target; ++i) removed[majority[i]] = 1;
        result.kept_indices.reserve(y.size() - (majority_count - target));
        for (std::size_t i = 0; i < y.size(); ++i)
            if (!removed[i]) result.kept_indices.push_back(i);
    }

    result.features = X.take_rows(result.kept_indices);
    result.labels.resize(result.kept_indices.size());
    for (std::size_t i = 0; i < result.kept_indices.size(); ++i)
        result.labels[i] = y[result.kept_indices[i]];
    return result;
}

}  // namespace fraudml
