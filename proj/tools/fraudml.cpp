#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fraudml/error.hpp"
#include "fraudml/pipeline.hpp"

namespace {

using namespace fraudml;

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", v * 100.0);
    return buf;
}

// Shared flag set. Flags beat config-file values, so every option tracks
// whether it was actually given.
struct CommonFlags {
    std::string config_path, input, label_column, out_dir, save_model, weight_mode, selection_metric;
    std::uint64_t seed = 0;
    int folds = 0, threads = 0;
    double ratio = 0.0, threshold = 0.0;
    bool no_resample = false, no_report = false, no_roc = false, no_grid = false;

    CLI::Option* o_input = nullptr;
    CLI::Option* o_label = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_folds = nullptr;
    CLI::Option* o_ratio = nullptr;
    CLI::Option* o_threshold = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_save = nullptr;
    CLI::Option* o_threads = nullptr;
    CLI::Option* o_wmode = nullptr;
    CLI::Option* o_metric = nullptr;

    void attach(CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override it)");
        o_input = sub->add_option("--input", input, "input CSV path");
        o_label = sub->add_option("--label-column", label_column, "label column name (default: Class)");
        o_seed = sub->add_option("--seed", seed, "top-level RNG seed (required, here or in the config)");
        o_folds = sub->add_option("--folds", folds, "cross-validation folds (default: 10)");
        o_ratio = sub->add_option("--ratio", ratio, "target minority:majority ratio in (0,1] (default: 1.0)");
        sub->add_flag("--no-resample", no_resample, "skip IHT undersampling");
        o_threshold = sub->add_option("--threshold", threshold, "decision threshold (default: 0.5)");
        o_out = sub->add_option("--out-dir", out_dir, "output directory (default: out)");
        o_save = sub->add_option("--save-model", save_model, "write the trained ensemble to this path");
        o_threads = sub->add_option("--threads", threads, "worker threads (default: hardware count)");
        o_wmode = sub->add_option("--weight-mode", weight_mode, "weight selection: first_fold or per_fold");
        o_metric = sub->add_option("--selection-metric", selection_metric,
                                   "grid-search metric: accuracy or macro_f1");
        sub->add_flag("--no-report-file", no_report, "skip writing report.json");
        sub->add_flag("--no-roc", no_roc, "skip writing ROC CSVs");
        sub->add_flag("--no-grid", no_grid, "skip writing grid.csv");
    }

    PipelineConfig build() const {
        PipelineConfig c = config_path.empty() ? PipelineConfig{} : load_config_file(config_path);
        if (o_input->count()) c.input = input;
        if (o_label->count()) c.label_column = label_column;
        if (o_seed->count()) c.seed = seed;
        if (o_folds->count()) c.k = folds;
        if (o_ratio->count()) c.target_ratio = ratio;
        if (no_resample) c.resample = false;
        if (o_threshold->count()) c.threshold = threshold;
        if (o_out->count()) c.out_dir = out_dir;
        if (o_save->count()) c.save_model_path = save_model;
        if (o_threads->count()) c.threads = threads;
        if (o_wmode->count()) c.weight_mode = weight_mode_from_name(weight_mode);
        if (o_metric->count()) c.grid.metric = selection_metric_from_name(selection_metric);
        if (no_report) c.write_report = false;
        if (no_roc) c.write_roc = false;
        if (no_grid) c.write_grid = false;
        return c;
    }
};

void print_weights(const EnsembleWeights& w, const char* label) {
    std::printf("%s (dt, rf, knn, mlp): %g, %g, %g, %g\n", label, w[0], w[1], w[2], w[3]);
}

int do_run(const PipelineConfig& config) {
    const PipelineResult res = run_pipeline(config);

    std::printf("loaded %zu rows (%zu incomplete dropped)\n", res.rows_loaded, res.rows_dropped);
    if (config.resample)
        std::printf("balanced: %zu rows kept, %zu majority rows removed\n", res.rows_after_balance,
                    res.majority_removed);
    else
        std::printf("resampling disabled: evaluating all %zu rows\n", res.rows_after_balance);
    print_weights(res.report.ensemble_weights, "ensemble weights");
    std::printf("selection %s: winner %.4f, equal weights %.4f\n",
                selection_metric_name(res.report.selection_metric).c_str(), res.report.selection_score,
                res.report.equal_weight_score);

    std::printf("\nmean over %d folds:\n", res.report.k);
    std::printf("%-5s %10s %10s %10s %10s %8s %8s %8s %8s\n", "model", "accuracy", "precision",
                "recall", "f1", "mae", "mse", "rmse", "auc");
    for (std::size_t m = 0; m < 5; ++m) {
        const MetricSet& a = res.report.aggregate[m].mean;
        std::printf("%-5s %10s %10s %10s %10s %8s %8s %8s %8s\n", kReportModels[m],
                    pct(a.accuracy).c_str(), pct(a.macro_precision).c_str(), pct(a.macro_recall).c_str(),
                    pct(a.macro_f1).c_str(), pct(a.mae).c_str(), pct(a.mse).c_str(), pct(a.rmse).c_str(),
                    pct(a.auc).c_str());
    }
    std::printf("\n(full precision and per-fold numbers land in the report file)\n");
    if (!res.report_path.empty()) std::printf("report: %s\n", res.report_path.c_str());
    if (!res.model_path.empty()) std::printf("model: %s\n", res.model_path.c_str());
    return 0;
}

int do_balance(const PipelineConfig& config) {
    const BalanceResult res = run_balance(config);
    std::printf("loaded %zu rows (%zu incomplete dropped)\n", res.rows_loaded, res.rows_dropped);
    std::printf("kept %zu rows, removed %zu majority rows\n", res.rows_kept, res.majority_removed);
    std::printf("balanced CSV: %s\n", res.balanced_path.c_str());
    std::printf("kept indices: %s\n", res.indices_path.c_str());
    return 0;
}

int do_grid(const PipelineConfig& config) {
    const GridRunResult res = run_grid(config);
    print_weights(res.search.best, "best weights");
    std::printf("%s: winner %.4f (accuracy %.4f), equal weights %.4f; %zu combinations\n",
                selection_metric_name(res.metric).c_str(), res.search.score, res.search.accuracy,
                res.equal_weight_score, res.search.table.size());
    if (!res.grid_path.empty()) std::printf("grid table: %s\n", res.grid_path.c_str());
    return 0;
}

int do_score(const std::string& model_path, const std::string& input, const std::string& output) {
    const ScoreResult res = run_score(model_path, input, output);
    if (output.empty())
        std::fputs(res.csv.c_str(), stdout);
    else
        std::printf("scored %zu rows -> %s\n", res.rows, output.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid fraud-detection pipeline: IHT-LR balancing, four base models, weighted soft voting"};
    app.require_subcommand(1);

    CLI::App* cmd_run = app.add_subcommand("run", "full pipeline: ingest, balance, cross-validate, report");
    CommonFlags run_flags;
    run_flags.attach(cmd_run);

    CLI::App* cmd_balance = app.add_subcommand("balance", "IHT undersampling only; writes the balanced CSV");
    CommonFlags balance_flags;
    balance_flags.attach(cmd_balance);

    CLI::App* cmd_grid = app.add_subcommand("grid", "ensemble weight search only; writes the grid table");
    CommonFlags grid_flags;
    grid_flags.attach(cmd_grid);

    CLI::App* cmd_score = app.add_subcommand("score", "apply a saved model to new rows");
    std::string score_model, score_input, score_output;
    cmd_score->add_option("--model", score_model, "saved model JSON")->required();
    cmd_score->add_option("--input", score_input, "CSV of rows to score")->required();
    cmd_score->add_option("--output", score_output, "write the scores here instead of stdout");

    try {
        app.parse(argc, argv);
        if (cmd_run->parsed()) return do_run(run_flags.build());
        if (cmd_balance->parsed()) return do_balance(balance_flags.build());
        if (cmd_grid->parsed()) return do_grid(grid_flags.build());
        if (cmd_score->parsed()) return do_score(score_model, score_input, score_output);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1; --help exits 0
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const TrainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
