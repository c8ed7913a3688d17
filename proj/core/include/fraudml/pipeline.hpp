#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraudml/cross_validate.hpp"
#include "fraudml/dataset.hpp"
#include "fraudml/logistic.hpp"
#include "fraudml/model_io.hpp"

namespace fraudml {

// Everything a run needs, merged from the optional config file and the
// command-line flags (flags win). The seed has no default on purpose: every
// published number must be reproducible, so the caller has to pick one.
struct PipelineConfig {
    std::string input;
    std::string label_column = "Class";
    std::optional<std::uint64_t> seed;
    int k = 10;
    double threshold = 0.5;

    bool resample = true;
    double target_ratio = 1.0;
    int resample_folds = 5;
    LogisticConfig resample_lr;

    DTParams dt;
    RFParams rf;
    KNNParams knn;
    MLPParams mlp;
    WeightGrid grid;
    WeightSelectionMode weight_mode = WeightSelectionMode::FirstFold;

    std::string out_dir = "out";
    bool write_report = true;
    bool write_roc = true;
    bool write_grid = true;
    std::string save_model_path;  // empty: skip
    int threads = 0;              // <= 0 picks a default
};

// JSON config file. Unknown keys are rejected so typos surface instead of
// silently falling back to defaults.
PipelineConfig load_config_file(const std::string& path);

struct PipelineResult {
    EvaluationReport report;
    std::size_t rows_loaded = 0;
    std::size_t rows_dropped = 0;        // incomplete rows removed
    std::size_t rows_after_balance = 0;
    std::size_t majority_removed = 0;
    LabelMap label_map;
    std::vector<std::string> feature_names;
    std::string report_path;  // empty when not written
    std::string model_path;   // empty when not saved
};

// ingest -> preprocess -> balance -> evaluate -> report. Any failure carries
// the stage name in its message.
PipelineResult run_pipeline(const PipelineConfig& config);

struct BalanceResult {
    std::size_t rows_loaded = 0;
    std::size_t rows_dropped = 0;
    std::size_t rows_kept = 0;
    std::size_t majority_removed = 0;
    std::string balanced_path;
    std::string indices_path;
};

// The balance stage alone: writes balanced.csv (original, unstandardized
// cell values) and kept_indices.csv into out_dir.
BalanceResult run_balance(const PipelineConfig& config);

struct GridRunResult {
    GridSearchResult search;
    double equal_weight_score = 0.0;
    SelectionMetric metric = SelectionMetric::MacroF1;
    std::string grid_path;  // empty when not written
};

// The weight search alone, on the same fold-0 training split `run` would
// use; writes grid.csv into out_dir when enabled.
GridRunResult run_grid(const PipelineConfig& config);

struct ScoreResult {
    std::size_t rows = 0;
    std::string csv;  // row_index,probability,label
};

// Applies a saved model to new rows. Columns are matched by name (the label
// column, if present, is ignored); output goes to output_path when given.
ScoreResult run_score(const std::string& model_path, const std::string& input_csv,
                      const std::string& output_path = {});

// The report document; deterministic for a given report + config except the
// timings_ms subtree.
std::string report_to_json(const EvaluationReport& report, const PipelineConfig& config);

}  // namespace fraudml
