#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraudml/decision_tree.hpp"
#include "fraudml/matrix.hpp"

namespace fraudml {

struct RFParams {
    std::size_t n_trees = 100;
    std::size_t max_features = 0;  // 0 picks floor(sqrt(n_features))
    bool bootstrap = true;
    int max_depth = -1;
    std::size_t min_samples_split = 2;
    std::uint64_t seed = 0;

    bool operator==(const RFParams&) const = default;
};

// Bagged CART ensemble. Each tree gets its own seed derived from the forest
// seed and its index, so training is reproducible at any thread count.
// Probabilities are the plain mean of the per-tree leaf fractions.
class RandomForest {
public:
    RandomForest() = default;

    static RandomForest train(const Matrix& X, const std::vector<int>& y, const RFParams& params,
                              int threads = 0);
    static RandomForest from_parts(std::vector<DecisionTree> trees, std::size_t n_features,
                                   const RFParams& params);

    double predict_one(std::span<const double> x) const;
    std::vector<double> predict_proba(const Matrix& X) const;

    const std::vector<DecisionTree>& trees() const { return trees_; }
    std::size_t n_features() const { return n_features_; }
    const RFParams& params() const { return params_; }

    bool operator==(const RandomForest&) const = default;

private:
    std::vector<DecisionTree> trees_;
    std::size_t n_features_ = 0;
    RFParams params_;
};

}  // namespace fraudml
