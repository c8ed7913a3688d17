#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fraudml/decision_tree.hpp"
#include "fraudml/knn.hpp"
#include "fraudml/matrix.hpp"
#include "fraudml/mlp.hpp"
#include "fraudml/random_forest.hpp"

namespace fraudml {

// Fixed member order; this is also the weight and report order everywhere.
enum class ModelKind { DecisionTree = 0, RandomForest = 1, Knn = 2, Mlp = 3 };

inline constexpr std::array<ModelKind, 4> kModelKinds{ModelKind::DecisionTree, ModelKind::RandomForest,
                                                      ModelKind::Knn, ModelKind::Mlp};

std::string model_kind_name(ModelKind kind);  // "dt", "rf", "knn", "mlp"

using TrainedModel = std::variant<DecisionTree, RandomForest, KnnModel, MlpModel>;

ModelKind model_kind(const TrainedModel& model);

std::vector<double> predict_proba(const TrainedModel& model, const Matrix& X);
double predict_proba_one(const TrainedModel& model, std::span<const double> x);

// Hard labels at the given threshold: 1 iff p >= threshold.
std::vector<int> predict(const TrainedModel& model, const Matrix& X, double threshold = 0.5);
std::vector<int> labels_from_proba(const std::vector<double>& probs, double threshold = 0.5);

}  // namespace fraudml
