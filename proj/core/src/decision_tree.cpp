#include "fraudml/decision_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "fraudml/error.hpp"

namespace fraudml {

double gini_impurity(std::span<const int> labels) {
    if (labels.empty()) throw DataError("gini: empty label set");
    std::size_t n1 = 0;
    for (int label : labels) {
        if (label != 0 && label != 1) throw DataError("gini: binary labels required, got " + std::to_string(label));
        n1 += static_cast<std::size_t>(label);
    }
    const double n = static_cast<double>(labels.size());
    const double p1 = static_cast<double>(n1) / n;
    const double p0 = 1.0 - p1;
    return 1.0 - p0 * p0 - p1 * p1;
}

namespace detail {

namespace {

double gini_from_counts(double n0, double n1) {
    const double n = n0 + n1;
    return 1.0 - (n0 * n0 + n1 * n1) / (n * n);
}

struct BestSplit {
    int feature = -1;
    double threshold = 0.0;
    double weighted = std::numeric_limits<double>::infinity();
};

struct Frame {
    std::uint32_t node;
    std::size_t begin;
    std::size_t end;
    int depth;
};

}  // namespace

std::vector<TreeNode> build_tree(const Matrix& X, const std::vector<int>& y,
                                 std::vector<std::size_t> indices, const TreeBuildParams& params) {
    const std::size_t d = X.cols();
    const bool all_features = params.max_features == 0 || params.max_features >= d;
    if (!all_features && params.rng == nullptr)
        throw UsageError("build_tree: feature subsets need an rng");

    std::vector<TreeNode> nodes(1);
    std::vector<Frame> stack{{0, 0, indices.size(), 0}};
    std::vector<std::size_t> feature_pool(d);
    std::iota(feature_pool.begin(), feature_pool.end(), std::size_t{0});
    std::vector<std::pair<double, int>> column;  // (value, label) for the current node/feature

    while (!stack.empty()) {
        const Frame frame = stack.back();
        stack.pop_back();
        const std::size_t n = frame.end - frame.begin;

        std::size_t n1 = 0;
        for (std::size_t i = frame.begin; i < frame.end; ++i) n1 += static_cast<std::size_t>(y[indices[i]]);
        TreeNode& node = nodes[frame.node];
        node.n0 = n - n1;
        node.n1 = n1;

        if (n1 == 0 || n1 == n || n < params.min_samples_split ||
            (params.max_depth >= 0 && frame.depth >= params.max_depth))
            continue;

        std::size_t n_candidates = d;
        if (!all_features) {
            // Partial Fisher-Yates: first max_features entries become the subset.
            for (std::size_t i = 0; i < params.max_features; ++i) {
                const std::size_t j = i + bounded(*params.rng, d - i);
                std::swap(feature_pool[i], feature_pool[j]);
            }
            std::sort(feature_pool.begin(), feature_pool.begin() + static_cast<std::ptrdiff_t>(params.max_features));
            n_candidates = params.max_features;
        }

        BestSplit best;
        for (std::size_t c = 0; c < n_candidates; ++c) {
            const std::size_t feature = all_features ? c : feature_pool[c];
            column.clear();
            for (std::size_t i = frame.begin; i < frame.end; ++i) {
                const std::size_t row = indices[i];
                column.emplace_back(X.row(row)[feature], y[row]);
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            double left0 = 0.0, left1 = 0.0;
            const double total0 = static_cast<double>(n - n1), total1 = static_cast<double>(n1);
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left1 += column[i].second;
                left0 += 1.0 - column[i].second;
                if (column[i].first == column[i + 1].first) continue;
                const double nl = static_cast<double>(i + 1);
                const double nr = static_cast<double>(n - i - 1);
                const double weighted = (nl * gini_from_counts(left0, left1) +
                                         nr * gini_from_counts(total0 - left0, total1 - left1)) /
                                        static_cast<double>(n);
                if (weighted < best.weighted) {
                    double thr = std::midpoint(column[i].first, column[i + 1].first);
                    if (!(thr > column[i].first)) thr = column[i + 1].first;  // adjacent doubles
                    best = {static_cast<int>(feature), thr, weighted};
                }
            }
        }
        if (best.feature < 0) continue;  // every candidate feature was constant

        const auto split = static_cast<std::size_t>(
            std::partition(indices.begin() + static_cast<std::ptrdiff_t>(frame.begin),
                           indices.begin() + static_cast<std::ptrdiff_t>(frame.end),
                           [&](std::size_t row) {
                               return X.row(row)[static_cast<std::size_t>(best.feature)] < best.threshold;
                           }) -
            indices.begin());

        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = static_cast<std::uint32_t>(nodes.size());
        node.right = node.left + 1;
        const std::uint32_t left = node.left, right = node.right;
        nodes.emplace_back();
        nodes.emplace_back();
        stack.push_back({right, split, frame.end, frame.depth + 1});
        stack.push_back({left, frame.begin, split, frame.depth + 1});
    }
    return nodes;
}

double predict_tree(const std::vector<TreeNode>& nodes, std::span<const double> x) {
    std::size_t at = 0;
    while (!nodes[at].is_leaf())
        at = x[static_cast<std::size_t>(nodes[at].feature)] < nodes[at].threshold ? nodes[at].left
                                                                                  : nodes[at].right;
    return nodes[at].p1();
}

}  // namespace detail

DecisionTree DecisionTree::train(const Matrix& X, const std::vector<int>& y, const DTParams& params) {
    if (X.rows() == 0) throw DataError("decision_tree: empty dataset");
    if (X.rows() != y.size())
        throw DataError("decision_tree: feature rows (" + std::to_string(X.rows()) + ") != labels (" +
                        std::to_string(y.size()) + ")");
    if (params.min_samples_split < 2) throw UsageError("decision_tree: min_samples_split must be >= 2");
    // Single-class input is legal here (the root is a pure leaf).
    for (int label : y)
        if (label != 0 && label != 1)
            throw DataError("decision_tree: binary labels required, got " + std::to_string(label));

    std::vector<std::size_t> indices(X.rows());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    detail::TreeBuildParams build{params.max_depth, params.min_samples_split, 0, nullptr};

    DecisionTree tree;
    tree.nodes_ = detail::build_tree(X, y, std::move(indices), build);
    tree.n_features_ = X.cols();
    tree.params_ = params;
    return tree;
}

DecisionTree DecisionTree::from_parts(std::vector<detail::TreeNode> nodes, std::size_t n_features,
                                      const DTParams& params) {
    if (nodes.empty()) throw DataError("decision_tree: empty node list");
    for (const detail::TreeNode& node : nodes) {
        if (node.n0 + node.n1 == 0) throw DataError("decision_tree: node with zero sample count");
        if (!node.is_leaf()) {
            if (node.left >= nodes.size() || node.right >= nodes.size())
                throw DataError("decision_tree: child index out of range");
            if (static_cast<std::size_t>(node.feature) >= n_features)
                throw DataError("decision_tree: split feature out of range");
        }
    }
    DecisionTree tree;
    tree.nodes_ = std::move(nodes);
    tree.n_features_ = n_features;
    tree.params_ = params;
    return tree;
}

double DecisionTree::predict_one(std::span<const double> x) const {
    if (nodes_.empty()) throw TrainError("decision_tree: model is untrained");
    if (x.size() != n_features_)
        throw DataError("decision_tree: expected " + std::to_string(n_features_) + " features, got " +
                        std::to_string(x.size()));
    return detail::predict_tree(nodes_, x);
}

std::vector<double> DecisionTree::predict_proba(const Matrix& X) const {
    std::vector<double> probs(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) probs[i] = predict_one(X.row(i));
    return probs;
}

}  // namespace fraudml
