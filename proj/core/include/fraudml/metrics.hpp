#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fraudml {

// Binary confusion counts with class 1 (fraudulent) as positive.
struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

// Macro metrics: the unweighted mean of the per-class values, both classes
// counted equally regardless of support.
struct ClassificationMetrics {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

struct RegressionErrors {
    double mae = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
};

// Everything reported per model, per fold. For hard binary predictions
// mae == mse, rmse == sqrt(mae) and accuracy == 1 - mae.
struct MetricSet {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double mae = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    double auc = 0.0;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred);

// A class with zero predicted (resp. actual) instances contributes
// precision (resp. recall) 0 to the macro average.
ClassificationMetrics metrics_from_confusion(const ConfusionMatrix& cm);

RegressionErrors regression_errors(std::span<const int> y_true, std::span<const int> y_pred);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    bool operator==(const RocPoint&) const = default;
};

// One point per distinct score threshold (descending), prepended with
// (0,0); samples with tied scores move across the threshold together.
std::vector<RocPoint> roc_curve(std::span<const int> y_true, std::span<const double> scores);

// Trapezoidal area under points sorted by fpr ascending.
double auc(std::span<const RocPoint> points);

}  // namespace fraudml
