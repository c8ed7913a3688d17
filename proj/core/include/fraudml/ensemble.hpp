#pragma once

#include <array>
#include <vector>

#include "fraudml/matrix.hpp"
#include "fraudml/model.hpp"

namespace fraudml {

// Per-model blend weights in the fixed dt, rf, knn, mlp order.
struct EnsembleWeights {
    std::array<double, 4> values{1.0, 1.0, 1.0, 1.0};

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    double sum() const { return values[0] + values[1] + values[2] + values[3]; }
    bool operator==(const EnsembleWeights&) const = default;
};

// Scales weights to sum to 1. The blend itself already divides by the sum,
// so this only changes how the weights read in reports.
EnsembleWeights normalize_weights(const EnsembleWeights& weights);

// Soft vote: p = sum(w_i * p_i) / sum(w_i), elementwise over samples.
std::vector<double> blend_probabilities(const std::array<std::vector<double>, 4>& probs,
                                        const EnsembleWeights& weights);

std::vector<double> ensemble_predict_proba(const std::array<TrainedModel, 4>& models, const Matrix& X,
                                           const EnsembleWeights& weights);

enum class SelectionMetric { Accuracy, MacroF1 };

std::string selection_metric_name(SelectionMetric metric);
SelectionMetric selection_metric_from_name(const std::string& name);

struct WeightGrid {
    // Candidate values per model slot, dt, rf, knn, mlp order.
    std::array<std::vector<double>, 4> candidates{
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0},
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0},
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0},
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0},
    };
    SelectionMetric metric = SelectionMetric::MacroF1;
};

struct GridSearchEntry {
    EnsembleWeights weights;
    double score = 0.0;     // value of the selection metric
    double accuracy = 0.0;  // always tracked, used as the tie-breaker
};

struct GridSearchResult {
    EnsembleWeights best;
    double score = 0.0;
    double accuracy = 0.0;
    std::vector<GridSearchEntry> table;  // every evaluated combination, enumeration order
};

// Exhaustive search over the candidate grid minus the all-zero combination.
// Combinations are enumerated lexicographically (dt slot outermost, values
// ascending); ties on the metric fall back to accuracy, then to the earliest
// combination, so the winner is the lexicographically smallest optimum.
GridSearchResult grid_search_weights(const std::array<std::vector<double>, 4>& val_probs,
                                     const std::vector<int>& y_val, const WeightGrid& grid,
                                     double threshold = 0.5);

GridSearchResult grid_search_weights(const std::array<TrainedModel, 4>& models, const Matrix& X_val,
                                     const std::vector<int>& y_val, const WeightGrid& grid,
                                     double threshold = 0.5);

}  // namespace fraudml
