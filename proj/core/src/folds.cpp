#include "fraudml/folds.hpp"

#include <array>

#include "fraudml/error.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

std::vector<std::size_t> FoldPlan::test_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> FoldPlan::train_indices(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) out.push_back(i);
    }
    return out;
}

FoldPlan stratified_kfold(const std::vector<int>& y, int k, std::uint64_t seed) {
    if (k < 2) throw UsageError("stratified_kfold: k must be at least 2");
    if (y.empty()) throw DataError("stratified_kfold: empty label vector");

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0 && y[i] != 1) throw DataError("stratified_kfold: non-binary label");
        by_class[static_cast<std::size_t>(y[i])].push_back(i);
    }
    for (int cls = 0; cls < 2; ++cls) {
        if (by_class[cls].size() < static_cast<std::size_t>(k)) {
            throw DataError("stratified_kfold: k=" + std::to_string(k) + " exceeds class " +
                            std::to_string(cls) + " count (" + std::to_string(by_class[cls].size()) +
                            ")");
        }
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(y.size(), 0);

    int cursor = 0;
    for (auto& members : by_class) {
        Rng rng(derive_seed(seed, "stratified_shuffle"));
        shuffle(members, rng);
        for (std::size_t idx : members) {
            plan.assignments[idx] = cursor;
            cursor = (cursor + 1) % k;
        }
    }
    return plan;
}

}  // namespace fraudml
