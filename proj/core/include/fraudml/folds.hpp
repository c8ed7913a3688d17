#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fraudml {

// A stratified partition of sample indices into k folds.
struct FoldPlan {
    int k = 0;
    std::vector<int> assignments;  // fold index per sample
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_indices(int fold) const;
    std::vector<std::size_t> train_indices(int fold) const;
};

// Within each class, indices are shuffled by the seeded generator and dealt
// round-robin; the dealing cursor carries over from one class to the next so
// fold sizes stay within one sample of each other. Every class is shuffled
// with an identically seeded stream, which keeps the plan symmetric under
// relabeling. Requires 2 <= k <= count of each class.
FoldPlan stratified_kfold(const std::vector<int>& y, int k, std::uint64_t seed);

}  // namespace fraudml
