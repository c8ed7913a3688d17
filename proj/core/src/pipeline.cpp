#include "fraudml/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "fraudml/error.hpp"
#include "fraudml/folds.hpp"
#include "fraudml/preprocess.hpp"
#include "fraudml/resample.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

using json = nlohmann::json;  // keys end up sorted, which keeps reports byte-stable
namespace fs = std::filesystem;

namespace {

template <typename Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
    const std::string prefix = "stage " + name + ": ";
    try {
        return fn();
    } catch (const UsageError& e) {
        throw UsageError(prefix + e.what());
    } catch (const TrainError& e) {
        throw TrainError(prefix + e.what());
    } catch (const DataError& e) {
        throw DataError(prefix + e.what());
    }
}

void check_basics(const PipelineConfig& config) {
    if (!config.seed) throw UsageError("seed is required (pass --seed or set it in the config file)");
    if (config.input.empty()) throw UsageError("input CSV path is required");
}

struct IngestResult {
    Dataset data;
    LabelMap label_map;
    std::size_t rows_loaded = 0;
    std::size_t rows_dropped = 0;
};

IngestResult ingest(const PipelineConfig& config) {
    IngestResult out;
    RawDataset raw = load_csv(config.input);
    out.rows_loaded = raw.rows.size();
    validate_schema(raw, config.label_column);
    raw = drop_incomplete(raw, &out.rows_dropped);

    // Numeric 0/1 label columns keep their face values; anything else is
    // encoded in first-appearance order (with the normal/fraudulent special
    // case inside encode_labels).
    const std::size_t label_idx = raw.column_index(config.label_column);
    std::vector<std::string> labels;
    labels.reserve(raw.rows.size());
    bool all01 = true;
    for (const auto& row : raw.rows) {
        const Cell& cell = row[label_idx];
        std::string text = cell.kind == Cell::Kind::Number ? format_double(cell.number) : cell.text;
        all01 = all01 && (text == "0" || text == "1");
        labels.push_back(std::move(text));
    }
    out.label_map = all01 ? LabelMap::binary01() : encode_labels(labels).map;
    out.data = to_dataset(raw, config.label_column, out.label_map);
    return out;
}

struct BalanceOutcome {
    Dataset balanced;  // unstandardized kept rows
    std::vector<std::size_t> kept;
    std::size_t removed = 0;
};

BalanceOutcome balance(const Dataset& data, const Matrix& standardized, const PipelineConfig& config) {
    BalanceOutcome out;
    out.balanced.feature_names = data.feature_names;
    if (!config.resample) {
        out.balanced = data;
        out.kept.resize(data.labels.size());
        std::iota(out.kept.begin(), out.kept.end(), std::size_t{0});
        return out;
    }
    ResampleConfig rc;
    rc.target_ratio = config.target_ratio;
    rc.cv_folds = config.resample_folds;
    rc.lr = config.resample_lr;
    rc.seed = *config.seed;
    rc.threads = config.threads;
    ResampleResult res = iht_undersample(standardized, data.labels, rc);
    out.kept = std::move(res.kept_indices);
    out.removed = data.labels.size() - out.kept.size();
    out.balanced.features = data.features.take_rows(out.kept);
    out.balanced.labels.resize(out.kept.size());
    for (std::size_t i = 0; i < out.kept.size(); ++i) out.balanced.labels[i] = data.labels[out.kept[i]];
    return out;
}

CrossValidateConfig make_cv_config(const PipelineConfig& config) {
    CrossValidateConfig cv;
    cv.k = config.k;
    cv.seed = *config.seed;
    cv.threshold = config.threshold;
    cv.dt = config.dt;
    cv.rf = config.rf;
    cv.knn = config.knn;
    cv.mlp = config.mlp;
    cv.grid = config.grid;
    cv.weight_mode = config.weight_mode;
    cv.threads = config.threads;
    return cv;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file '" + path + "'");
    out << text;
    if (!out.flush()) throw DataError("failed writing file '" + path + "'");
}

std::string ensure_out_dir(const PipelineConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + config.out_dir + "': " + ec.message());
    return config.out_dir;
}

json confusion_to_json(const ConfusionMatrix& cm) {
    return json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

json metrics_to_json(const MetricSet& metrics) {
    json j;
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) j[kMetricNames[i]] = metrics.*kMetricFields[i];
    return j;
}

json config_to_json(const PipelineConfig& c) {
    json j;
    j["input"] = c.input;
    j["label_column"] = c.label_column;
    j["folds"] = c.k;
    j["threshold"] = c.threshold;
    j["resample"] = {{"enabled", c.resample},
                     {"target_ratio", c.target_ratio},
                     {"cv_folds", c.resample_folds},
                     {"learning_rate", c.resample_lr.learning_rate},
                     {"epochs", c.resample_lr.epochs},
                     {"l2", c.resample_lr.l2}};
    j["dt"] = {{"max_depth", c.dt.max_depth}, {"min_samples_split", c.dt.min_samples_split}};
    j["rf"] = {{"n_trees", c.rf.n_trees},
               {"max_features", c.rf.max_features},
               {"bootstrap", c.rf.bootstrap},
               {"max_depth", c.rf.max_depth},
               {"min_samples_split", c.rf.min_samples_split}};
    j["knn"] = {{"k", c.knn.k}};
    j["mlp"] = {{"hidden_layers", c.mlp.hidden_layers},
                {"learning_rate", c.mlp.learning_rate},
                {"epochs", c.mlp.epochs},
                {"batch_size", c.mlp.batch_size}};
    j["weight_mode"] = weight_mode_name(c.weight_mode);
    j["selection_metric"] = selection_metric_name(c.grid.metric);
    j["weight_candidates"] = {{"dt", c.grid.candidates[0]},
                              {"rf", c.grid.candidates[1]},
                              {"knn", c.grid.candidates[2]},
                              {"mlp", c.grid.candidates[3]}};
    j["out_dir"] = c.out_dir;
    j["write_report"] = c.write_report;
    j["write_roc"] = c.write_roc;
    j["write_grid"] = c.write_grid;
    j["save_model"] = c.save_model_path;
    j["threads"] = c.threads;
    return j;
}

std::string roc_to_csv(const std::vector<RocPoint>& points) {
    std::string text = "fpr,tpr\n";
    for (const RocPoint& p : points)
        text += format_double(p.fpr) + "," + format_double(p.tpr) + "\n";
    return text;
}

std::string grid_to_csv(const std::vector<GridSearchEntry>& table) {
    std::string text = "w_dt,w_rf,w_knn,w_mlp,metric\n";
    for (const GridSearchEntry& entry : table) {
        for (std::size_t m = 0; m < 4; ++m) text += format_double(entry.weights[m]) + ",";
        text += format_double(entry.score) + "\n";
    }
    return text;
}

std::string indices_to_csv(const std::vector<std::size_t>& kept) {
    std::string text = "index\n";
    for (std::size_t idx : kept) text += std::to_string(idx) + "\n";
    return text;
}

}  // namespace

std::string report_to_json(const EvaluationReport& report, const PipelineConfig& config) {
    json j;
    j["config"] = config_to_json(config);
    j["seed"] = report.seed;

    json folds = json::array();
    for (const auto& fold : report.folds) {
        json fj;
        for (std::size_t m = 0; m < 5; ++m)
            fj[kReportModels[m]] = {{"confusion", confusion_to_json(fold[m].confusion)},
                                    {"metrics", metrics_to_json(fold[m].metrics)}};
        folds.push_back(std::move(fj));
    }
    j["folds"] = std::move(folds);

    json agg;
    for (std::size_t m = 0; m < 5; ++m) {
        json mj;
        for (std::size_t i = 0; i < kMetricNames.size(); ++i)
            mj[kMetricNames[i]] = {{"mean", report.aggregate[m].mean.*kMetricFields[i]},
                                   {"std", report.aggregate[m].stddev.*kMetricFields[i]}};
        agg[kReportModels[m]] = std::move(mj);
    }
    j["aggregate"] = std::move(agg);

    j["ensemble_weights"] = {{"dt", report.ensemble_weights[0]},
                             {"rf", report.ensemble_weights[1]},
                             {"knn", report.ensemble_weights[2]},
                             {"mlp", report.ensemble_weights[3]},
                             {"selection_metric", selection_metric_name(report.selection_metric)},
                             {"selection_score", report.selection_score},
                             {"equal_weight_score", report.equal_weight_score}};
    j["timings_ms"] = {{"total", report.total_ms}, {"folds", report.fold_ms}};
    return j.dump(2) + "\n";
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    check_basics(config);
    PipelineResult result;

    const IngestResult in = stage("ingest", [&] { return ingest(config); });
    result.rows_loaded = in.rows_loaded;
    result.rows_dropped = in.rows_dropped;
    result.label_map = in.label_map;
    result.feature_names = in.data.feature_names;

    // The hardness estimator wants standardized features; the scaler here is
    // fitted on the full cleaned data, pre-CV. Evaluation refits per fold.
    Matrix standardized;
    if (config.resample)
        standardized = stage("preprocess", [&] { return transform(fit_scaler(in.data.features), in.data.features); });

    const BalanceOutcome bal = stage("balance", [&] { return balance(in.data, standardized, config); });
    result.rows_after_balance = bal.balanced.labels.size();
    result.majority_removed = bal.removed;

    result.report = stage("evaluate", [&] {
        return cross_validate(bal.balanced.features, bal.balanced.labels, make_cv_config(config));
    });

    stage("report", [&] {
        if (!config.write_report && !config.write_roc && !config.write_grid) return 0;
        const std::string dir = ensure_out_dir(config);
        if (config.write_report) {
            result.report_path = (fs::path(dir) / "report.json").string();
            write_text_file(result.report_path, report_to_json(result.report, config));
        }
        if (config.write_roc)
            for (std::size_t m = 0; m < 5; ++m)
                write_text_file((fs::path(dir) / ("roc_" + std::string(kReportModels[m]) + ".csv")).string(),
                                roc_to_csv(result.report.roc[m]));
        if (config.write_grid)
            write_text_file((fs::path(dir) / "grid.csv").string(), grid_to_csv(result.report.grid_table));
        return 0;
    });

    if (!config.save_model_path.empty()) {
        stage("save-model", [&] {
            const CrossValidateConfig cv = make_cv_config(config);
            const ScalerParams scaler = fit_scaler(bal.balanced.features);
            const Matrix Xs = transform(scaler, bal.balanced.features);
            SavedModel model;
            model.label_column = config.label_column;
            model.feature_names = bal.balanced.feature_names;
            model.label_map = in.label_map;
            model.scaler = scaler;
            model.models = train_base_models(Xs, bal.balanced.labels, cv, "final_", 0, config.threads);
            model.weights = result.report.ensemble_weights;
            model.threshold = config.threshold;
            model.seed = *config.seed;
            save_model(model, config.save_model_path);
            result.model_path = config.save_model_path;
            return 0;
        });
    }
    return result;
}

BalanceResult run_balance(const PipelineConfig& config) {
    check_basics(config);
    BalanceResult result;

    const IngestResult in = stage("ingest", [&] { return ingest(config); });
    result.rows_loaded = in.rows_loaded;
    result.rows_dropped = in.rows_dropped;

    Matrix standardized;
    if (config.resample)
        standardized = stage("preprocess", [&] { return transform(fit_scaler(in.data.features), in.data.features); });

    const BalanceOutcome bal = stage("balance", [&] { return balance(in.data, standardized, config); });
    result.rows_kept = bal.kept.size();
    result.majority_removed = bal.removed;

    stage("report", [&] {
        const std::string dir = ensure_out_dir(config);
        result.balanced_path = (fs::path(dir) / "balanced.csv").string();
        write_csv_file(bal.balanced, config.label_column, result.balanced_path);
        result.indices_path = (fs::path(dir) / "kept_indices.csv").string();
        write_text_file(result.indices_path, indices_to_csv(bal.kept));
        return 0;
    });
    return result;
}

GridRunResult run_grid(const PipelineConfig& config) {
    check_basics(config);
    GridRunResult result;
    result.metric = config.grid.metric;

    const IngestResult in = stage("ingest", [&] { return ingest(config); });

    Matrix standardized;
    if (config.resample)
        standardized = stage("preprocess", [&] { return transform(fit_scaler(in.data.features), in.data.features); });

    const BalanceOutcome bal = stage("balance", [&] { return balance(in.data, standardized, config); });

    // Mirror the run subcommand exactly: the search sees fold 0's training
    // split of the same outer fold plan, so the winner matches a full run.
    const WeightSelection sel = stage("evaluate", [&] {
        const CrossValidateConfig cv = make_cv_config(config);
        const FoldPlan plan =
            stratified_kfold(bal.balanced.labels, cv.k, derive_seed(cv.seed, "cv_folds"));
        const std::vector<std::size_t> train_idx = plan.train_indices(0);
        std::vector<int> y_train(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) y_train[i] = bal.balanced.labels[train_idx[i]];
        return select_ensemble_weights(bal.balanced.features.take_rows(train_idx), y_train, cv, 0);
    });
    result.search = sel.grid;
    result.equal_weight_score = sel.equal_weight_score;

    if (config.write_grid) {
        stage("report", [&] {
            const std::string dir = ensure_out_dir(config);
            result.grid_path = (fs::path(dir) / "grid.csv").string();
            write_text_file(result.grid_path, grid_to_csv(result.search.table));
            return 0;
        });
    }
    return result;
}

ScoreResult run_score(const std::string& model_path, const std::string& input_csv,
                      const std::string& output_path) {
    const SavedModel model = load_model(model_path);
    const RawDataset raw = load_csv(input_csv);

    // Match columns by name; an extra label column is fine and ignored.
    std::vector<std::size_t> source_col(model.feature_names.size());
    std::string missing, extra;
    for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
        source_col[j] = raw.column_index(model.feature_names[j]);
        if (source_col[j] == RawDataset::npos) {
            if (!missing.empty()) missing += ", ";
            missing += model.feature_names[j];
        }
    }
    for (const std::string& name : raw.column_names) {
        if (name == model.label_column) continue;
        bool known = false;
        for (const std::string& feature : model.feature_names) known = known || feature == name;
        if (!known) {
            if (!extra.empty()) extra += ", ";
            extra += name;
        }
    }
    if (!missing.empty() || !extra.empty()) {
        std::string msg = "score: input columns do not match the model";
        if (!missing.empty()) msg += "; missing: " + missing;
        if (!extra.empty()) msg += "; unexpected: " + extra;
        throw DataError(msg);
    }

    Matrix X(raw.rows.size(), model.feature_names.size());
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        for (std::size_t j = 0; j < source_col.size(); ++j) {
            const Cell& cell = raw.rows[i][source_col[j]];
            if (cell.kind != Cell::Kind::Number)
                throw DataError("score: non-numeric cell at row " + std::to_string(i) + ", column '" +
                                model.feature_names[j] + "'");
            X(i, j) = cell.number;
        }
    }

    const std::vector<double> probs =
        ensemble_predict_proba(model.models, transform(model.scaler, X), model.weights);
    const std::vector<int> labels = labels_from_proba(probs, model.threshold);

    ScoreResult result;
    result.rows = probs.size();
    result.csv = "row_index,probability,label\n";
    for (std::size_t i = 0; i < probs.size(); ++i)
        result.csv +=
            std::to_string(i) + "," + format_double(probs[i]) + "," + std::to_string(labels[i]) + "\n";
    if (!output_path.empty()) write_text_file(output_path, result.csv);
    return result;
}

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed) known = known || key == name;
        if (!known) throw UsageError("config: unknown key '" + key + "' in " + where);
    }
}

}  // namespace

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();

    PipelineConfig config;
    try {
        const json j = json::parse(buffer.str());
        if (!j.is_object()) throw UsageError("config: top level must be an object");
        check_keys(j, "the top level",
                   {"input", "label_column", "seed", "folds", "threshold", "threads", "out_dir",
                    "save_model", "write_report", "write_roc", "write_grid", "weight_mode",
                    "selection_metric", "weight_candidates", "resample", "dt", "rf", "knn", "mlp"});

        if (j.contains("input")) config.input = j["input"].get<std::string>();
        if (j.contains("label_column")) config.label_column = j["label_column"].get<std::string>();
        if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("folds")) config.k = j["folds"].get<int>();
        if (j.contains("threshold")) config.threshold = j["threshold"].get<double>();
        if (j.contains("threads")) config.threads = j["threads"].get<int>();
        if (j.contains("out_dir")) config.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("save_model")) config.save_model_path = j["save_model"].get<std::string>();
        if (j.contains("write_report")) config.write_report = j["write_report"].get<bool>();
        if (j.contains("write_roc")) config.write_roc = j["write_roc"].get<bool>();
        if (j.contains("write_grid")) config.write_grid = j["write_grid"].get<bool>();
        if (j.contains("weight_mode"))
            config.weight_mode = weight_mode_from_name(j["weight_mode"].get<std::string>());
        if (j.contains("selection_metric"))
            config.grid.metric = selection_metric_from_name(j["selection_metric"].get<std::string>());

        if (j.contains("weight_candidates")) {
            const json& wc = j["weight_candidates"];
            check_keys(wc, "weight_candidates", {"dt", "rf", "knn", "mlp"});
            const std::array<const char*, 4> slots{"dt", "rf", "knn", "mlp"};
            for (std::size_t m = 0; m < 4; ++m)
                if (wc.contains(slots[m]))
                    config.grid.candidates[m] = wc[slots[m]].get<std::vector<double>>();
        }
        if (j.contains("resample")) {
            const json& r = j["resample"];
            check_keys(r, "resample",
                       {"enabled", "target_ratio", "cv_folds", "learning_rate", "epochs", "l2"});
            if (r.contains("enabled")) config.resample = r["enabled"].get<bool>();
            if (r.contains("target_ratio")) config.target_ratio = r["target_ratio"].get<double>();
            if (r.contains("cv_folds")) config.resample_folds = r["cv_folds"].get<int>();
            if (r.contains("learning_rate"))
                config.resample_lr.learning_rate = r["learning_rate"].get<double>();
            if (r.contains("epochs")) config.resample_lr.epochs = r["epochs"].get<int>();
            if (r.contains("l2")) config.resample_lr.l2 = r["l2"].get<double>();
        }
        if (j.contains("dt")) {
            const json& d = j["dt"];
            check_keys(d, "dt", {"max_depth", "min_samples_split"});
            if (d.contains("max_depth")) config.dt.max_depth = d["max_depth"].get<int>();
            if (d.contains("min_samples_split"))
                config.dt.min_samples_split = d["min_samples_split"].get<std::size_t>();
        }
        if (j.contains("rf")) {
            const json& r = j["rf"];
            check_keys(r, "rf", {"n_trees", "max_features", "bootstrap", "max_depth", "min_samples_split"});
            if (r.contains("n_trees")) config.rf.n_trees = r["n_trees"].get<std::size_t>();
            if (r.contains("max_features")) config.rf.max_features = r["max_features"].get<std::size_t>();
            if (r.contains("bootstrap")) config.rf.bootstrap = r["bootstrap"].get<bool>();
            if (r.contains("max_depth")) config.rf.max_depth = r["max_depth"].get<int>();
            if (r.contains("min_samples_split"))
                config.rf.min_samples_split = r["min_samples_split"].get<std::size_t>();
        }
        if (j.contains("knn")) {
            const json& k = j["knn"];
            check_keys(k, "knn", {"k"});
            if (k.contains("k")) config.knn.k = k["k"].get<std::size_t>();
        }
        if (j.contains("mlp")) {
            const json& m = j["mlp"];
            check_keys(m, "mlp", {"hidden_layers", "learning_rate", "epochs", "batch_size"});
            if (m.contains("hidden_layers"))
                config.mlp.hidden_layers = m["hidden_layers"].get<std::vector<std::size_t>>();
            if (m.contains("learning_rate")) config.mlp.learning_rate = m["learning_rate"].get<double>();
            if (m.contains("epochs")) config.mlp.epochs = m["epochs"].get<int>();
            if (m.contains("batch_size")) config.mlp.batch_size = m["batch_size"].get<std::size_t>();
        }
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    return config;
}

}  // namespace fraudml
