#include "fraudml/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fraudml/error.hpp"

namespace fraudml {

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw DataError("confusion: length mismatch (" + std::to_string(y_true.size()) + " vs " +
                        std::to_string(y_pred.size()) + ")");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] != 0 && y_true[i] != 1) throw DataError("confusion: non-binary true label");
        if (y_pred[i] != 0 && y_pred[i] != 1) throw DataError("confusion: non-binary predicted label");
        if (y_true[i] == 1) {
            y_pred[i] == 1 ? ++cm.tp : ++cm.fn;
        } else {
            y_pred[i] == 1 ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

ClassificationMetrics metrics_from_confusion(const ConfusionMatrix& cm) {
    const double total = static_cast<double>(cm.total());
    if (total <= 0) throw DataError("metrics_from_confusion: empty confusion matrix");

    auto ratio = [](std::int64_t num, std::int64_t den) {
        return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    };
    auto f1 = [](double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; };

    const double prec1 = ratio(cm.tp, cm.tp + cm.fp);
    const double rec1 = ratio(cm.tp, cm.tp + cm.fn);
    const double prec0 = ratio(cm.tn, cm.tn + cm.fn);
    const double rec0 = ratio(cm.tn, cm.tn + cm.fp);

    ClassificationMetrics m;
    m.accuracy = static_cast<double>(cm.tp + cm.tn) / total;
    m.macro_precision = 0.5 * (prec0 + prec1);
    m.macro_recall = 0.5 * (rec0 + rec1);
    m.macro_f1 = 0.5 * (f1(prec0, rec0) + f1(prec1, rec1));
    return m;
}

RegressionErrors regression_errors(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size()) throw DataError("regression_errors: length mismatch");
    if (y_true.empty()) throw DataError("regression_errors: empty input");

    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        double diff = static_cast<double>(y_pred[i]) - static_cast<double>(y_true[i]);
        abs_sum += std::abs(diff);
        sq_sum += diff * diff;
    }
    RegressionErrors e;
    e.mae = abs_sum / static_cast<double>(y_true.size());
    e.mse = sq_sum / static_cast<double>(y_true.size());
    e.rmse = std::sqrt(e.mse);
    return e;
}

std::vector<RocPoint> roc_curve(std::span<const int> y_true, std::span<const double> scores) {
    if (y_true.size() != scores.size()) throw DataError("roc_curve: length mismatch");
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (!std::isfinite(scores[i])) throw DataError("roc_curve: non-finite score");
        y_true[i] == 1 ? ++pos : ++neg;
    }
    if (pos == 0 || neg == 0) throw DataError("roc_curve: both classes required");

    std::vector<std::size_t> order(y_true.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> points;
    points.push_back({0.0, 0.0});
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        while (i < order.size() && scores[order[i]] == threshold) {
            y_true[order[i]] == 1 ? ++tp : ++fp;
            ++i;
        }
        points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                          static_cast<double>(tp) / static_cast<double>(pos)});
    }
    return points;
}

double auc(std::span<const RocPoint> points) {
    if (points.size() < 2) throw DataError("auc: need at least two points");
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].fpr < points[i - 1].fpr) throw UsageError("auc: points not sorted by fpr");
        area += (points[i].fpr - points[i - 1].fpr) * 0.5 * (points[i].tpr + points[i - 1].tpr);
    }
    return area;
}

}  // namespace fraudml
