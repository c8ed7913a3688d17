#include "fraudml/preprocess.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "fraudml/error.hpp"

namespace fraudml {

ScalerParams fit_scaler(const Matrix& features) {
    if (features.empty()) throw DataError("fit_scaler: empty feature matrix");
    const std::size_t n = features.rows();
    const std::size_t d = features.cols();

    ScalerParams params;
    params.n_fitted = n;
    params.means.assign(d, 0.0);
    params.stds.assign(d, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        auto r = features.row(i);
        for (std::size_t c = 0; c < d; ++c) params.means[c] += r[c];
    }
    for (std::size_t c = 0; c < d; ++c) params.means[c] /= static_cast<double>(n);

    // Two-pass variance for accuracy on already-centered data.
    for (std::size_t i = 0; i < n; ++i) {
        auto r = features.row(i);
        for (std::size_t c = 0; c < d; ++c) {
            double diff = r[c] - params.means[c];
            params.stds[c] += diff * diff;
        }
    }
    for (std::size_t c = 0; c < d; ++c) params.stds[c] = std::sqrt(params.stds[c] / static_cast<double>(n));
    return params;
}

Matrix transform(const ScalerParams& params, const Matrix& features) {
    if (features.cols() != params.means.size()) {
        std::ostringstream msg;
        msg << "transform: feature count " << features.cols() << " does not match fitted scaler ("
            << params.means.size() << " columns)";
        throw DataError(msg.str());
    }
    Matrix out(features.rows(), features.cols());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        auto src = features.row(i);
        auto dst = out.row(i);
        for (std::size_t c = 0; c < features.cols(); ++c) {
            double s = params.stds[c];
            dst[c] = s == 0.0 ? 0.0 : (src[c] - params.means[c]) / s;
        }
    }
    return out;
}

void LabelMap::add(const std::string& category) {
    if (index_.count(category)) throw UsageError("LabelMap: duplicate category '" + category + "'");
    index_.emplace(category, static_cast<int>(categories_.size()));
    categories_.push_back(category);
}

int LabelMap::code_of(const std::string& category) const {
    auto it = index_.find(category);
    return it == index_.end() ? -1 : it->second;
}

const std::string& LabelMap::category_of(int code) const {
    if (code < 0 || static_cast<std::size_t>(code) >= categories_.size()) {
        throw UsageError("LabelMap: code " + std::to_string(code) + " out of range");
    }
    return categories_[static_cast<std::size_t>(code)];
}

LabelMap LabelMap::binary01() {
    LabelMap map;
    map.add("0");
    map.add("1");
    return map;
}

namespace {

std::string lower_ascii(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

EncodedLabels encode_labels(const std::vector<std::string>& raw_labels) {
    if (raw_labels.empty()) throw DataError("encode_labels: empty label list");

    LabelMap map;
    for (const auto& label : raw_labels) {
        if (map.code_of(label) < 0) map.add(label);
    }

    // Force normal -> 0, fraudulent -> 1 when those are exactly the categories.
    if (map.size() == 2) {
        std::string a = lower_ascii(map.categories()[0]);
        std::string b = lower_ascii(map.categories()[1]);
        if (a == "fraudulent" && b == "normal") {
            LabelMap forced;
            forced.add(map.categories()[1]);
            forced.add(map.categories()[0]);
            map = forced;
        }
    }

    EncodedLabels out;
    out.codes.reserve(raw_labels.size());
    for (const auto& label : raw_labels) out.codes.push_back(map.code_of(label));
    out.map = std::move(map);
    return out;
}

std::vector<std::string> decode_labels(const LabelMap& map, const std::vector<int>& codes) {
    std::vector<std::string> out;
    out.reserve(codes.size());
    for (int code : codes) {
        // Codes arrive from data (label vectors, model files), so a bad one
        // is a data problem rather than API misuse.
        if (code < 0 || static_cast<std::size_t>(code) >= map.size())
            throw DataError("decode_labels: code " + std::to_string(code) + " out of range");
        out.push_back(map.category_of(code));
    }
    return out;
}

}  // namespace fraudml
