#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fraudml/ensemble.hpp"
#include "fraudml/matrix.hpp"
#include "fraudml/metrics.hpp"
#include "fraudml/model.hpp"

namespace fraudml {

// Report/weight order: the four base models, then the soft-vote ensemble.
inline constexpr std::array<const char*, 5> kReportModels{"dt", "rf", "knn", "mlp", "ens"};

inline constexpr std::array<const char*, 8> kMetricNames{
    "accuracy", "macro_precision", "macro_recall", "macro_f1", "mae", "mse", "rmse", "auc"};

inline constexpr std::array<double MetricSet::*, 8> kMetricFields{
    &MetricSet::accuracy, &MetricSet::macro_precision, &MetricSet::macro_recall, &MetricSet::macro_f1,
    &MetricSet::mae,      &MetricSet::mse,             &MetricSet::rmse,         &MetricSet::auc};

enum class WeightSelectionMode {
    FirstFold,  // search once on fold 0's training split, reuse everywhere
    PerFold,    // search independently inside every training fold
};

std::string weight_mode_name(WeightSelectionMode mode);
WeightSelectionMode weight_mode_from_name(const std::string& name);

struct CrossValidateConfig {
    int k = 10;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    DTParams dt;
    RFParams rf;
    KNNParams knn;
    MLPParams mlp;
    WeightGrid grid;
    WeightSelectionMode weight_mode = WeightSelectionMode::FirstFold;
    int threads = 0;
};

struct FoldEvaluation {
    ConfusionMatrix confusion;
    MetricSet metrics;
};

struct MetricAggregate {
    MetricSet mean;
    MetricSet stddev;  // population (divide by k)
};

struct EvaluationReport {
    int k = 0;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    std::vector<std::array<FoldEvaluation, 5>> folds;  // [fold][model]
    std::array<MetricAggregate, 5> aggregate;
    EnsembleWeights ensemble_weights;                // the fold-0 selection winner
    std::vector<EnsembleWeights> fold_weights;       // weights actually used per fold
    SelectionMetric selection_metric = SelectionMetric::MacroF1;
    double selection_score = 0.0;                    // winner's score on the selection split
    double equal_weight_score = 0.0;                 // all-ones blend on the same split
    std::vector<GridSearchEntry> grid_table;         // fold-0 search, enumeration order
    std::array<std::vector<RocPoint>, 5> roc;        // pooled out-of-fold scores
    double total_ms = 0.0;
    std::vector<double> fold_ms;
};

// Confusion, classification/regression metrics and AUC for one scored split.
FoldEvaluation evaluate_predictions(const std::vector<int>& y_true, const std::vector<double>& probs,
                                    double threshold);

struct WeightSelection {
    GridSearchResult grid;
    double equal_weight_score = 0.0;  // the all-ones blend on the same split
};

// Grid search on a held-out slice of the given training split: the split is
// cut once more (stratified), the base models are fit on the larger part and
// every weight combination is scored on the smaller. `fold` namespaces the
// derived seeds.
WeightSelection select_ensemble_weights(const Matrix& X_train, const std::vector<int>& y_train,
                                        const CrossValidateConfig& config, std::size_t fold);

// Trains the four base models on (X, y), each with a seed derived from
// config.seed, seed_tag_prefix + its short name, and index.
std::array<TrainedModel, 4> train_base_models(const Matrix& X, const std::vector<int>& y,
                                              const CrossValidateConfig& config,
                                              const std::string& seed_tag_prefix, std::uint64_t index,
                                              int threads);

// Stratified k-fold evaluation of the full hybrid: per fold, fit the scaler
// on the training split, train the base models, blend with grid-searched
// weights, and score the held-out split. Results are identical at any
// thread count.
EvaluationReport cross_validate(const Matrix& X, const std::vector<int>& y,
                                const CrossValidateConfig& config);

}  // namespace fraudml
