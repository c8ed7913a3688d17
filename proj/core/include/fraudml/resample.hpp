#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fraudml/logistic.hpp"
#include "fraudml/matrix.hpp"

namespace fraudml {

struct ResampleConfig {
    double target_ratio = 1.0;  // minority / majority after undersampling, in (0, 1]
    int cv_folds = 5;
    LogisticConfig lr;
    std::uint64_t seed = 0;
    int threads = 0;  // <= 0 picks a default
};

struct HardnessScores {
    std::vector<double> scores;            // 1 - out-of-fold probability of the true class
    std::vector<std::size_t> fold_assignment;
};

// Cross-validated hardness: a fold plan is drawn over y, a logistic model is
// fit on each training split, and every sample is scored by the model that
// did not see it.
HardnessScores hardness_scores(const Matrix& X, const std::vector<int>& y, const ResampleConfig& config);

struct ResampleResult {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::size_t> kept_indices;  // strictly increasing into the input rows
};

// Instance-hardness-threshold undersampling: drops the hardest majority-class
// samples until majority == round(minority / target_ratio). The minority
// class is the rarer label (class 1 on ties). Never touches minority rows.
ResampleResult iht_undersample(const Matrix& X, const std::vector<int>& y, const ResampleConfig& config);

}  // namespace fraudml
