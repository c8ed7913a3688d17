#include "fraudml/random_forest.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "fraudml/error.hpp"
#include "fraudml/parallel.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

RandomForest RandomForest::train(const Matrix& X, const std::vector<int>& y, const RFParams& params,
                                 int threads) {
    if (X.rows() == 0) throw DataError("random_forest: empty dataset");
    if (X.rows() != y.size())
        throw DataError("random_forest: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (params.n_trees == 0) throw UsageError("random_forest: n_trees must be >= 1");
    if (params.min_samples_split < 2) throw UsageError("random_forest: min_samples_split must be >= 2");
    for (int label : y)
        if (label != 0 && label != 1)
            throw DataError("random_forest: binary labels required, got " + std::to_string(label));

    const std::size_t d = X.cols();
    std::size_t max_features = params.max_features;
    if (max_features == 0) max_features = static_cast<std::size_t>(std::sqrt(static_cast<double>(d)));
    if (max_features < 1) max_features = 1;
    if (max_features > d) max_features = d;

    DTParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_samples_split = params.min_samples_split;

    RandomForest forest;
    forest.trees_.resize(params.n_trees);
    forest.n_features_ = d;
    forest.params_ = params;

    const std::size_t n = X.rows();
    parallel_for(params.n_trees, threads, [&](std::size_t t) {
        Rng rng(derive_seed(params.seed, "rf_tree", t));
        std::vector<std::size_t> sample(n);
        if (params.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) sample[i] = bounded(rng, n);
        } else {
            std::iota(sample.begin(), sample.end(), std::size_t{0});
        }
        detail::TreeBuildParams build{params.max_depth, params.min_samples_split,
                                      max_features >= d ? std::size_t{0} : max_features, &rng};
        DTParams echoed = tree_params;
        echoed.seed = derive_seed(params.seed, "rf_tree", t);
        forest.trees_[t] =
            DecisionTree::from_parts(detail::build_tree(X, y, std::move(sample), build), d, echoed);
    });
    return forest;
}

RandomForest RandomForest::from_parts(std::vector<DecisionTree> trees, std::size_t n_features,
                                      const RFParams& params) {
    if (trees.empty()) throw DataError("random_forest: empty tree list");
    for (const DecisionTree& tree : trees)
        if (tree.n_features() != n_features) throw DataError("random_forest: tree feature count mismatch");
    RandomForest forest;
    forest.trees_ = std::move(trees);
    forest.n_features_ = n_features;
    forest.params_ = params;
    return forest;
}

double RandomForest::predict_one(std::span<const double> x) const {
    if (trees_.empty()) throw TrainError("random_forest: model is untrained");
    if (x.size() != n_features_)
        throw DataError("random_forest: expected " + std::to_string(n_features_) + " features, got " +
                        std::to_string(x.size()));
    double sum = 0.0;
    for (const DecisionTree& tree : trees_) sum += detail::predict_tree(tree.nodes(), x);
    return sum / static_cast<double>(trees_.size());
}

std::vector<double> RandomForest::predict_proba(const Matrix& X) const {
    std::vector<double> probs(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) probs[i] = predict_one(X.row(i));
    return probs;
}

}  // namespace fraudml
