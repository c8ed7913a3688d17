#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraudml/matrix.hpp"

namespace fraudml {

// Fitted standardization state: per-column mean and population standard
// deviation (divide by n, so the fitting data transforms to exactly unit
// variance).
struct ScalerParams {
    std::vector<double> means;
    std::vector<double> stds;
    std::size_t n_fitted = 0;

    bool operator==(const ScalerParams&) const = default;
};

ScalerParams fit_scaler(const Matrix& features);

// (x - mean) / std per cell. Columns with zero std map to 0: a constant
// column carries no information either way.
Matrix transform(const ScalerParams& params, const Matrix& features);

// Ordered category -> integer code mapping, codes 0..k-1 in insertion order.
class LabelMap {
public:
    // Appends a category with the next code. Duplicates are rejected.
    void add(const std::string& category);

    // Code for a category, -1 if absent.
    int code_of(const std::string& category) const;

    const std::string& category_of(int code) const;

    std::size_t size() const { return categories_.size(); }
    const std::vector<std::string>& categories() const { return categories_; }

    // The mapping used for numeric 0/1 label columns.
    static LabelMap binary01();

    bool operator==(const LabelMap& other) const { return categories_ == other.categories_; }

private:
    std::vector<std::string> categories_;
    std::unordered_map<std::string, int> index_;
};

struct EncodedLabels {
    std::vector<int> codes;
    LabelMap map;
};

// Assigns integer codes to categories in first-appearance order. When the
// category set is exactly {normal, fraudulent} (case-insensitive), the
// mapping is forced to normal -> 0, fraudulent -> 1.
EncodedLabels encode_labels(const std::vector<std::string>& raw_labels);

std::vector<std::string> decode_labels(const LabelMap& map, const std::vector<int>& codes);

}  // namespace fraudml
