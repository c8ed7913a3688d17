#include "fraudml/cross_validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "fraudml/error.hpp"
#include "fraudml/folds.hpp"
#include "fraudml/parallel.hpp"
#include "fraudml/preprocess.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

std::string weight_mode_name(WeightSelectionMode mode) {
    switch (mode) {
        case WeightSelectionMode::FirstFold: return "first_fold";
        case WeightSelectionMode::PerFold: return "per_fold";
    }
    throw UsageError("unknown weight selection mode");
}

WeightSelectionMode weight_mode_from_name(const std::string& name) {
    if (name == "first_fold") return WeightSelectionMode::FirstFold;
    if (name == "per_fold") return WeightSelectionMode::PerFold;
    throw UsageError("unknown weight selection mode '" + name + "' (want first_fold or per_fold)");
}

FoldEvaluation evaluate_predictions(const std::vector<int>& y_true, const std::vector<double>& probs,
                                    double threshold) {
    const std::vector<int> predicted = labels_from_proba(probs, threshold);
    FoldEvaluation eval;
    eval.confusion = confusion(y_true, predicted);
    const ClassificationMetrics cls = metrics_from_confusion(eval.confusion);
    const RegressionErrors reg = regression_errors(y_true, predicted);
    eval.metrics.accuracy = cls.accuracy;
    eval.metrics.macro_precision = cls.macro_precision;
    eval.metrics.macro_recall = cls.macro_recall;
    eval.metrics.macro_f1 = cls.macro_f1;
    eval.metrics.mae = reg.mae;
    eval.metrics.mse = reg.mse;
    eval.metrics.rmse = reg.rmse;
    eval.metrics.auc = auc(roc_curve(y_true, probs));
    return eval;
}

std::array<TrainedModel, 4> train_base_models(const Matrix& X, const std::vector<int>& y,
                                              const CrossValidateConfig& config,
                                              const std::string& seed_tag_prefix, std::uint64_t index,
                                              int threads) {
    DTParams dt = config.dt;
    dt.seed = derive_seed(config.seed, seed_tag_prefix + "dt", index);
    RFParams rf = config.rf;
    rf.seed = derive_seed(config.seed, seed_tag_prefix + "rf", index);
    MLPParams mlp = config.mlp;
    mlp.seed = derive_seed(config.seed, seed_tag_prefix + "mlp", index);
    return {
        TrainedModel(DecisionTree::train(X, y, dt)),
        TrainedModel(RandomForest::train(X, y, rf, threads)),
        TrainedModel(KnnModel::train(X, y, config.knn)),
        TrainedModel(MlpModel::train(X, y, mlp)),
    };
}

namespace {

double score_of(const ClassificationMetrics& metrics, SelectionMetric metric) {
    return metric == SelectionMetric::Accuracy ? metrics.accuracy : metrics.macro_f1;
}

}  // namespace

WeightSelection select_ensemble_weights(const Matrix& X_train, const std::vector<int>& y_train,
                                        const CrossValidateConfig& config, std::size_t fold) {
    std::size_t count0 = 0, count1 = 0;
    for (int label : y_train) (label == 1 ? count1 : count0) += 1;
    const std::size_t min_count = std::min(count0, count1);
    const int inner_k = static_cast<int>(std::min<std::size_t>(5, min_count));
    if (inner_k < 2) throw TrainError("weight selection needs at least 2 samples of each class");

    const FoldPlan plan =
        stratified_kfold(y_train, inner_k, derive_seed(config.seed, "sel_folds", fold));
    const std::vector<std::size_t> fit_idx = plan.train_indices(0);
    const std::vector<std::size_t> val_idx = plan.test_indices(0);

    Matrix X_fit = X_train.take_rows(fit_idx);
    std::vector<int> y_fit(fit_idx.size());
    for (std::size_t i = 0; i < fit_idx.size(); ++i) y_fit[i] = y_train[fit_idx[i]];
    Matrix X_val = X_train.take_rows(val_idx);
    std::vector<int> y_val(val_idx.size());
    for (std::size_t i = 0; i < val_idx.size(); ++i) y_val[i] = y_train[val_idx[i]];

    const ScalerParams scaler = fit_scaler(X_fit);
    X_fit = transform(scaler, X_fit);
    X_val = transform(scaler, X_val);

    const std::array<TrainedModel, 4> models =
        train_base_models(X_fit, y_fit, config, "sel_", fold, 1);
    std::array<std::vector<double>, 4> probs;
    for (std::size_t m = 0; m < 4; ++m) probs[m] = predict_proba(models[m], X_val);

    WeightSelection outcome;
    outcome.grid = grid_search_weights(probs, y_val, config.grid, config.threshold);
    const std::vector<double> equal = blend_probabilities(probs, EnsembleWeights{});
    const ClassificationMetrics equal_metrics =
        metrics_from_confusion(confusion(y_val, labels_from_proba(equal, config.threshold)));
    outcome.equal_weight_score = score_of(equal_metrics, config.grid.metric);
    return outcome;
}

namespace {

template <typename Fn>
auto with_fold_context(std::size_t fold, Fn&& fn) {
    const std::string prefix = "fold " + std::to_string(fold) + ": ";
    try {
        return fn();
    } catch (const UsageError& e) {
        throw UsageError(prefix + e.what());
    } catch (const TrainError& e) {
        throw TrainError(prefix + e.what());
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    }
}

}  // namespace

EvaluationReport cross_validate(const Matrix& X, const std::vector<int>& y,
                                const CrossValidateConfig& config) {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();

    if (X.rows() != y.size())
        throw DataError("cross_validate: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    const FoldPlan plan = stratified_kfold(y, config.k, derive_seed(config.seed, "cv_folds"));

    EvaluationReport report;
    report.k = config.k;
    report.seed = config.seed;
    report.threshold = config.threshold;
    report.selection_metric = config.grid.metric;
    report.folds.resize(static_cast<std::size_t>(config.k));
    report.fold_weights.resize(static_cast<std::size_t>(config.k));
    report.fold_ms.resize(static_cast<std::size_t>(config.k));

    // Fold 0's winner steers every fold in FirstFold mode, so resolve it
    // before the fold loop starts.
    if (config.weight_mode == WeightSelectionMode::FirstFold) {
        const WeightSelection outcome = with_fold_context(0, [&] {
            const std::vector<std::size_t> train_idx = plan.train_indices(0);
            std::vector<int> y_train(train_idx.size());
            for (std::size_t i = 0; i < train_idx.size(); ++i) y_train[i] = y[train_idx[i]];
            return select_ensemble_weights(X.take_rows(train_idx), y_train, config, 0);
        });
        report.ensemble_weights = outcome.grid.best;
        report.selection_score = outcome.grid.score;
        report.equal_weight_score = outcome.equal_weight_score;
        report.grid_table = std::move(outcome.grid.table);
        for (auto& w : report.fold_weights) w = report.ensemble_weights;
    }

    // Pooled out-of-fold probabilities, written per test index.
    std::array<std::vector<double>, 5> pooled;
    for (auto& p : pooled) p.assign(y.size(), 0.0);

    parallel_for(static_cast<std::size_t>(config.k), config.threads, [&](std::size_t fold) {
        with_fold_context(fold, [&] {
            const auto fold_started = clock::now();
            const std::vector<std::size_t> train_idx = plan.train_indices(fold);
            const std::vector<std::size_t> test_idx = plan.test_indices(fold);

            Matrix X_train = X.take_rows(train_idx);
            std::vector<int> y_train(train_idx.size());
            for (std::size_t i = 0; i < train_idx.size(); ++i) y_train[i] = y[train_idx[i]];
            Matrix X_test = X.take_rows(test_idx);
            std::vector<int> y_test(test_idx.size());
            for (std::size_t i = 0; i < test_idx.size(); ++i) y_test[i] = y[test_idx[i]];

            if (config.weight_mode == WeightSelectionMode::PerFold) {
                WeightSelection outcome = select_ensemble_weights(X_train, y_train, config, fold);
                report.fold_weights[fold] = outcome.grid.best;
                if (fold == 0) {
                    report.ensemble_weights = outcome.grid.best;
                    report.selection_score = outcome.grid.score;
                    report.equal_weight_score = outcome.equal_weight_score;
                    report.grid_table = std::move(outcome.grid.table);
                }
            }

            const ScalerParams scaler = fit_scaler(X_train);
            X_train = transform(scaler, X_train);
            X_test = transform(scaler, X_test);

            const std::array<TrainedModel, 4> models =
                train_base_models(X_train, y_train, config, "", fold, 1);

            std::array<std::vector<double>, 4> probs;
            for (std::size_t m = 0; m < 4; ++m) probs[m] = predict_proba(models[m], X_test);
            const std::vector<double> blended = blend_probabilities(probs, report.fold_weights[fold]);

            for (std::size_t m = 0; m < 4; ++m)
                report.folds[fold][m] = evaluate_predictions(y_test, probs[m], config.threshold);
            report.folds[fold][4] = evaluate_predictions(y_test, blended, config.threshold);

            for (std::size_t i = 0; i < test_idx.size(); ++i) {
                for (std::size_t m = 0; m < 4; ++m) pooled[m][test_idx[i]] = probs[m][i];
                pooled[4][test_idx[i]] = blended[i];
            }
            report.fold_ms[fold] =
                std::chrono::duration<double, std::milli>(clock::now() - fold_started).count();
            return 0;
        });
    });

    for (std::size_t m = 0; m < 5; ++m) {
        report.roc[m] = roc_curve(y, pooled[m]);
        const double k = static_cast<double>(config.k);
        for (auto field : kMetricFields) {
            double mean = 0.0;
            for (const auto& fold : report.folds) mean += fold[m].metrics.*field;
            mean /= k;
            double var = 0.0;
            for (const auto& fold : report.folds) {
                const double diff = fold[m].metrics.*field - mean;
                var += diff * diff;
            }
            report.aggregate[m].mean.*field = mean;
            report.aggregate[m].stddev.*field = std::sqrt(var / k);
        }
    }

    report.total_ms = std::chrono::duration<double, std::milli>(clock::now() - started).count();
    return report;
}

}  // namespace fraudml
