#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fraudml/ensemble.hpp"
#include "fraudml/model.hpp"
#include "fraudml/preprocess.hpp"

namespace fraudml {

// Everything needed to score new rows later: the fitted scaler, the label
// mapping, the four base models and the blend weights.
struct SavedModel {
    int format_version = 1;
    std::string label_column;
    std::vector<std::string> feature_names;
    LabelMap label_map;
    ScalerParams scaler;
    std::array<TrainedModel, 4> models;
    EnsembleWeights weights;
    double threshold = 0.5;
    std::uint64_t seed = 0;
};

// JSON text with sorted keys and a trailing FNV-1a checksum of the rest of
// the document, so a stored model round-trips byte for byte.
std::string model_to_json(const SavedModel& model);
SavedModel model_from_json(const std::string& text);

void save_model(const SavedModel& model, const std::string& path);
SavedModel load_model(const std::string& path);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace fraudml
