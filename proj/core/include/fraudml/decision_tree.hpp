#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraudml/matrix.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

namespace detail {

// feature < 0 marks a leaf; interior nodes route x[feature] < threshold left.
// Every node keeps its training class counts; the predicted probability is
// the class-1 fraction.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint64_t n0 = 0;
    std::uint64_t n1 = 0;

    bool is_leaf() const { return feature < 0; }
    double p1() const { return static_cast<double>(n1) / static_cast<double>(n0 + n1); }
    bool operator==(const TreeNode&) const = default;
};

struct TreeBuildParams {
    int max_depth = -1;  // < 0 means unlimited
    std::size_t min_samples_split = 2;
    std::size_t max_features = 0;  // >= n_features (or 0) scans every feature
    Rng* rng = nullptr;            // only consulted when drawing feature subsets
};

// CART growth by weighted Gini over the given sample indices (duplicates
// allowed, so bootstrap samples work). Ties prefer the lowest feature, then
// the lowest threshold. Tolerates single-class input: the root is a leaf.
std::vector<TreeNode> build_tree(const Matrix& X, const std::vector<int>& y,
                                 std::vector<std::size_t> indices, const TreeBuildParams& params);

double predict_tree(const std::vector<TreeNode>& nodes, std::span<const double> x);

}  // namespace detail

double gini_impurity(std::span<const int> labels);

struct DTParams {
    int max_depth = -1;
    std::size_t min_samples_split = 2;
    std::uint64_t seed = 0;  // echoed only; growth with a full feature scan is deterministic

    bool operator==(const DTParams&) const = default;
};

class DecisionTree {
public:
    DecisionTree() = default;

    static DecisionTree train(const Matrix& X, const std::vector<int>& y, const DTParams& params);
    static DecisionTree from_parts(std::vector<detail::TreeNode> nodes, std::size_t n_features,
                                   const DTParams& params);

    double predict_one(std::span<const double> x) const;
    std::vector<double> predict_proba(const Matrix& X) const;

    const std::vector<detail::TreeNode>& nodes() const { return nodes_; }
    std::size_t n_features() const { return n_features_; }
    const DTParams& params() const { return params_; }

    bool operator==(const DecisionTree&) const = default;

private:
    std::vector<detail::TreeNode> nodes_;
    std::size_t n_features_ = 0;
    DTParams params_;
};

}  // namespace fraudml
