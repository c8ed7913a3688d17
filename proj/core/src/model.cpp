#include "fraudml/model.hpp"

#include "fraudml/error.hpp"

namespace fraudml {

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::DecisionTree: return "dt";
        case ModelKind::RandomForest: return "rf";
        case ModelKind::Knn: return "knn";
        case ModelKind::Mlp: return "mlp";
    }
    throw UsageError("unknown model kind");
}

ModelKind model_kind(const TrainedModel& model) {
    return static_cast<ModelKind>(model.index());
}

std::vector<double> predict_proba(const TrainedModel& model, const Matrix& X) {
    return std::visit([&](const auto& m) { return m.predict_proba(X); }, model);
}

double predict_proba_one(const TrainedModel& model, std::span<const double> x) {
    return std::visit([&](const auto& m) { return m.predict_one(x); }, model);
}

std::vector<int> labels_from_proba(const std::vector<double>& probs, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0)) throw UsageError("threshold must be in (0, 1)");
    std::vector<int> labels(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) labels[i] = probs[i] >= threshold ? 1 : 0;
    return labels;
}

std::vector<int> predict(const TrainedModel& model, const Matrix& X, double threshold) {
    return labels_from_proba(predict_proba(model, X), threshold);
}

}  // namespace fraudml
