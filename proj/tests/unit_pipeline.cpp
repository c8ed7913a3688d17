#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"

#include "fraudml/dataset.hpp"
#include "fraudml/error.hpp"
#include "fraudml/pipeline.hpp"
#include "fraudml/synth.hpp"
#include "support/helpers.hpp"

using namespace fraudml;

namespace {

// Writes a small imbalanced blob CSV and returns a config pointed at it.
PipelineConfig quick_pipeline(const testsupport::TempDir& dir, std::uint64_t seed) {
    BlobSpec spec;
    spec.n0 = 80;
    spec.n1 = 40;
    spec.dim = 3;
    spec.separation = 6.0;
    spec.seed = 51;
    auto data = make_two_blobs(spec);
    Dataset ds;
    ds.features = data.features;
    ds.labels = data.labels;
    ds.feature_names = {"f1", "f2", "f3"};
    write_csv_file(ds, "Class", dir.file("input.csv"));

    PipelineConfig cfg;
    cfg.input = dir.file("input.csv");
    cfg.seed = seed;
    cfg.k = 4;
    cfg.rf.n_trees = 10;
    cfg.mlp.hidden_layers = {6};
    cfg.mlp.epochs = 25;
    cfg.knn.k = 3;
    cfg.out_dir = dir.file("out");
    return cfg;
}

}  // namespace

TEST_SUITE("unit") {

TEST_CASE("make_two_blobs is deterministic with the requested shape") {
    BlobSpec spec;
    spec.n0 = 25;
    spec.n1 = 15;
    spec.dim = 4;
    spec.seed = 3;
    auto a = make_two_blobs(spec);
    auto b = make_two_blobs(spec);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
    CHECK(a.features.rows() == 40);
    CHECK(a.features.cols() == 4);
    CHECK(std::count(a.labels.begin(), a.labels.end(), 1) == 15);

    spec.seed = 4;
    auto c = make_two_blobs(spec);
    CHECK(!(a.features == c.features));
}

TEST_CASE("run_pipeline writes a parseable report with the documented keys") {
    testsupport::TempDir dir("pipe_run");
    auto cfg = quick_pipeline(dir, 101);
    auto result = run_pipeline(cfg);

    CHECK(result.rows_loaded == 120);
    CHECK(result.rows_after_balance == 80);  // 40 + 40 after 1:1 balancing
    CHECK(result.majority_removed == 40);
    REQUIRE(!result.report_path.empty());

    auto doc = nlohmann::json::parse(testsupport::read_file(result.report_path));
    for (const char* key : {"config", "seed", "folds", "aggregate", "ensemble_weights", "timings_ms"})
        CHECK(doc.contains(key));
    CHECK(doc["seed"].get<std::uint64_t>() == 101);
    REQUIRE(doc["folds"].is_array());
    CHECK(doc["folds"].size() == 4);
    for (const char* model : {"dt", "rf", "knn", "mlp", "ens"}) {
        CHECK(doc["folds"][0].contains(model));
        CHECK(doc["folds"][0][model].contains("confusion"));
        CHECK(doc["folds"][0][model].contains("metrics"));
        CHECK(doc["aggregate"].contains(model));
    }
    for (const char* key : {"dt", "rf", "knn", "mlp"}) CHECK(doc["ensemble_weights"].contains(key));

    // ROC and grid exports parse as CSV with the documented columns.
    auto roc = parse_csv(testsupport::read_file(dir.file("out/roc_ens.csv")));
    CHECK(roc.column_names == std::vector<std::string>{"fpr", "tpr"});
    CHECK(!roc.rows.empty());
    auto grid = parse_csv(testsupport::read_file(dir.file("out/grid.csv")));
    CHECK(grid.column_names == std::vector<std::string>{"w_dt", "w_rf", "w_knn", "w_mlp", "metric"});
    CHECK(grid.rows.size() == 624);
}

TEST_CASE("the pipeline requires a seed and an input path") {
    PipelineConfig cfg;
    cfg.input = "somewhere.csv";
    CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("seed"), UsageError);

    PipelineConfig cfg2;
    cfg2.seed = 1;
    CHECK_THROWS_AS(run_pipeline(cfg2), UsageError);
}

TEST_CASE("stage failures name the stage and the path") {
    PipelineConfig cfg;
    cfg.input = "/nonexistent/data.csv";
    cfg.seed = 1;
    CHECK_THROWS_WITH_AS(run_pipeline(cfg), doctest::Contains("stage ingest"), DataError);
    try {
        run_pipeline(cfg);
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/data.csv") != std::string::npos);
    }
}

TEST_CASE("run_balance writes the balanced CSV and kept indices") {
    testsupport::TempDir dir("pipe_balance");
    auto cfg = quick_pipeline(dir, 103);
    auto result = run_balance(cfg);

    CHECK(result.rows_loaded == 120);
    CHECK(result.rows_kept == 80);
    CHECK(result.majority_removed == 40);

    auto raw = load_csv(result.balanced_path);
    validate_schema(raw, "Class");
    auto ds = to_dataset(raw, "Class", LabelMap::binary01());
    CHECK(ds.features.rows() == 80);
    CHECK(std::count(ds.labels.begin(), ds.labels.end(), 1) == 40);

    auto indices = load_csv(result.indices_path);
    CHECK(indices.column_names == std::vector<std::string>{"index"});
    CHECK(indices.rows.size() == 80);
}

TEST_CASE("run_grid reports the same winner as a full run") {
    testsupport::TempDir dir("pipe_grid");
    auto cfg = quick_pipeline(dir, 107);
    auto grid = run_grid(cfg);
    auto full = run_pipeline(cfg);
    CHECK(grid.search.best == full.report.ensemble_weights);
    CHECK(grid.search.score == full.report.selection_score);
    CHECK(grid.equal_weight_score == full.report.equal_weight_score);
    CHECK(!grid.grid_path.empty());
}

TEST_CASE("scoring a saved model on its training rows reproduces the labels") {
    testsupport::TempDir dir("pipe_score");
    auto cfg = quick_pipeline(dir, 109);
    cfg.save_model_path = dir.file("model.json");
    auto result = run_pipeline(cfg);
    REQUIRE(!result.model_path.empty());

    // Score the balanced training rows: the final models fit them closely.
    auto balance = run_balance(cfg);
    auto scored = run_score(result.model_path, balance.balanced_path, dir.file("scores.csv"));
    CHECK(scored.rows == 80);

    auto raw = parse_csv(scored.csv);
    CHECK(raw.column_names == std::vector<std::string>{"row_index", "probability", "label"});
    REQUIRE(raw.rows.size() == 80);

    auto truth = to_dataset(load_csv(balance.balanced_path), "Class", LabelMap::binary01());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < 80; ++i) {
        int label = static_cast<int>(raw.rows[i][2].number);
        agree += (label == truth.labels[i]);
    }
    CHECK(agree == 80);

    // The CSV written to disk matches the returned text.
    CHECK(testsupport::read_file(dir.file("scores.csv")) == scored.csv);
}

TEST_CASE("scoring rejects mismatched columns by name") {
    testsupport::TempDir dir("pipe_score_cols");
    auto cfg = quick_pipeline(dir, 113);
    cfg.save_model_path = dir.file("model.json");
    run_pipeline(cfg);

    testsupport::write_file(dir.file("renamed.csv"), "f1,f2,zz\n1,2,3\n");
    CHECK_THROWS_WITH_AS(run_score(dir.file("model.json"), dir.file("renamed.csv")),
                         doctest::Contains("f3"), DataError);
    try {
        run_score(dir.file("model.json"), dir.file("renamed.csv"));
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("zz") != std::string::npos);
    }
}

TEST_CASE("config files reject unknown keys and merge cleanly") {
    testsupport::TempDir dir("pipe_config");
    testsupport::write_file(dir.file("good.json"), R"({
        "input": "in.csv",
        "seed": 5,
        "folds": 3,
        "resample": {"enabled": false},
        "rf": {"n_trees": 7},
        "mlp": {"hidden_layers": [4, 2]}
    })");
    auto cfg = load_config_file(dir.file("good.json"));
    CHECK(cfg.input == "in.csv");
    CHECK(cfg.seed == 5);
    CHECK(cfg.k == 3);
    CHECK(cfg.resample == false);
    CHECK(cfg.rf.n_trees == 7);
    CHECK(cfg.mlp.hidden_layers == std::vector<std::size_t>{4, 2});

    testsupport::write_file(dir.file("typo.json"), R"({"seeed": 5})");
    CHECK_THROWS_WITH_AS(load_config_file(dir.file("typo.json")), doctest::Contains("seeed"),
                         UsageError);

    testsupport::write_file(dir.file("nested_typo.json"), R"({"rf": {"trees": 7}})");
    CHECK_THROWS_AS(load_config_file(dir.file("nested_typo.json")), UsageError);

    testsupport::write_file(dir.file("broken.json"), "{");
    CHECK_THROWS_AS(load_config_file(dir.file("broken.json")), UsageError);
}

TEST_CASE("reports are byte-identical across runs except the timing block") {
    testsupport::TempDir dir("pipe_det");
    auto cfg = quick_pipeline(dir, 127);

    auto first = run_pipeline(cfg);
    auto text1 = testsupport::read_file(first.report_path);
    auto second = run_pipeline(cfg);
    auto text2 = testsupport::read_file(second.report_path);

    auto doc1 = nlohmann::json::parse(text1);
    auto doc2 = nlohmann::json::parse(text2);
    doc1.erase("timings_ms");
    doc2.erase("timings_ms");
    CHECK(doc1.dump() == doc2.dump());
}

TEST_CASE("resampling can be disabled") {
    testsupport::TempDir dir("pipe_noresample");
    auto cfg = quick_pipeline(dir, 131);
    cfg.resample = false;
    auto result = run_pipeline(cfg);
    CHECK(result.rows_after_balance == 120);
    CHECK(result.majority_removed == 0);
}

}  // TEST_SUITE
