#include "doctest.h"

#include <cmath>
#include <vector>

#include "fraudml/cross_validate.hpp"
#include "fraudml/error.hpp"
#include "fraudml/synth.hpp"

using namespace fraudml;

namespace {

// Fast hyperparameters so CV tests stay quick.
CrossValidateConfig quick_config(int k, std::uint64_t seed) {
    CrossValidateConfig cfg;
    cfg.k = k;
    cfg.seed = seed;
    cfg.rf.n_trees = 15;
    cfg.mlp.hidden_layers = {8};
    cfg.mlp.epochs = 40;
    cfg.knn.k = 3;
    return cfg;
}

bool reports_equal_modulo_time(const EvaluationReport& a, const EvaluationReport& b) {
    if (a.k != b.k || a.seed != b.seed) return false;
    if (a.folds.size() != b.folds.size()) return false;
    for (std::size_t f = 0; f < a.folds.size(); ++f)
        for (std::size_t m = 0; m < 5; ++m) {
            if (!(a.folds[f][m].confusion == b.folds[f][m].confusion)) return false;
            for (auto field : kMetricFields)
                if (a.folds[f][m].metrics.*field != b.folds[f][m].metrics.*field) return false;
        }
    for (std::size_t m = 0; m < 5; ++m) {
        for (auto field : kMetricFields) {
            if (a.aggregate[m].mean.*field != b.aggregate[m].mean.*field) return false;
            if (a.aggregate[m].stddev.*field != b.aggregate[m].stddev.*field) return false;
        }
        if (!(a.roc[m] == b.roc[m])) return false;
    }
    return a.ensemble_weights == b.ensemble_weights && a.fold_weights == b.fold_weights &&
           a.selection_score == b.selection_score && a.equal_weight_score == b.equal_weight_score;
}

}  // namespace

TEST_SUITE("unit") {

TEST_CASE("weight mode names round-trip") {
    CHECK(weight_mode_name(WeightSelectionMode::FirstFold) == "first_fold");
    CHECK(weight_mode_name(WeightSelectionMode::PerFold) == "per_fold");
    CHECK(weight_mode_from_name("first_fold") == WeightSelectionMode::FirstFold);
    CHECK(weight_mode_from_name("per_fold") == WeightSelectionMode::PerFold);
    CHECK_THROWS_AS(weight_mode_from_name("sometimes"), UsageError);
}

TEST_CASE("evaluate_predictions summarizes a scored split") {
    std::vector<int> y{1, 1, 0, 0};
    std::vector<double> probs{0.9, 0.2, 0.1, 0.8};
    auto eval = evaluate_predictions(y, probs, 0.5);
    CHECK(eval.confusion == ConfusionMatrix{1, 1, 1, 1});
    CHECK(eval.metrics.accuracy == 0.5);
    CHECK(eval.metrics.mae == 0.5);
    CHECK(eval.metrics.mse == 0.5);
    CHECK(eval.metrics.rmse == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("separable blobs score a perfect fold table") {
    BlobSpec spec;
    spec.n0 = 100;
    spec.n1 = 100;
    spec.dim = 2;
    spec.separation = 10.0;
    spec.seed = 21;
    auto data = make_two_blobs(spec);

    auto report = cross_validate(data.features, data.labels, quick_config(5, 9));
    REQUIRE(report.folds.size() == 5);
    for (const auto& fold : report.folds)
        for (const auto& model : fold) {
            CHECK(model.metrics.accuracy == 1.0);
            CHECK(model.metrics.mae == 0.0);
        }
    for (const auto& agg : report.aggregate) CHECK(agg.mean.accuracy == 1.0);
}

TEST_CASE("cross-validation is deterministic and thread-count independent") {
    BlobSpec spec;
    spec.n0 = 60;
    spec.n1 = 40;
    spec.dim = 3;
    spec.separation = 1.5;
    spec.seed = 33;
    auto data = make_two_blobs(spec);

    auto cfg = quick_config(4, 17);
    auto a = cross_validate(data.features, data.labels, cfg);
    auto b = cross_validate(data.features, data.labels, cfg);
    CHECK(reports_equal_modulo_time(a, b));

    auto cfg_threads = cfg;
    cfg_threads.threads = 4;
    auto c = cross_validate(data.features, data.labels, cfg_threads);
    CHECK(reports_equal_modulo_time(a, c));
}

TEST_CASE("aggregate means equal the per-fold arithmetic means") {
    BlobSpec spec;
    spec.n0 = 50;
    spec.n1 = 50;
    spec.dim = 2;
    spec.separation = 1.0;  // noisy on purpose so metrics vary by fold
    spec.seed = 35;
    auto data = make_two_blobs(spec);

    auto report = cross_validate(data.features, data.labels, quick_config(5, 23));
    for (std::size_t m = 0; m < 5; ++m) {
        for (auto field : kMetricFields) {
            double sum = 0.0;
            for (const auto& fold : report.folds) sum += fold[m].metrics.*field;
            CHECK(std::abs(report.aggregate[m].mean.*field - sum / 5.0) <= 1e-12);
        }
    }
}

TEST_CASE("every fold row satisfies the hard-prediction error identities") {
    BlobSpec spec;
    spec.n0 = 40;
    spec.n1 = 40;
    spec.dim = 2;
    spec.separation = 1.2;
    spec.seed = 37;
    auto data = make_two_blobs(spec);

    auto report = cross_validate(data.features, data.labels, quick_config(4, 29));
    for (const auto& fold : report.folds)
        for (const auto& model : fold) {
            CHECK(model.metrics.mae == model.metrics.mse);
            CHECK(model.metrics.rmse == doctest::Approx(std::sqrt(model.metrics.mae)).epsilon(1e-12));
            CHECK(model.metrics.accuracy + model.metrics.mae == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(model.confusion.total() > 0);
        }
}

TEST_CASE("first-fold mode freezes one weight vector for every fold") {
    BlobSpec spec;
    spec.n0 = 60;
    spec.n1 = 60;
    spec.dim = 2;
    spec.separation = 2.0;
    spec.seed = 39;
    auto data = make_two_blobs(spec);

    auto cfg = quick_config(3, 31);
    cfg.weight_mode = WeightSelectionMode::FirstFold;
    auto report = cross_validate(data.features, data.labels, cfg);
    REQUIRE(report.fold_weights.size() == 3);
    for (const auto& w : report.fold_weights) CHECK(w == report.ensemble_weights);
    CHECK(report.selection_score >= report.equal_weight_score);
    CHECK(report.grid_table.size() == 624);
}

TEST_CASE("per-fold mode runs an independent search in every fold") {
    BlobSpec spec;
    spec.n0 = 40;
    spec.n1 = 40;
    spec.dim = 2;
    spec.separation = 2.0;
    spec.seed = 41;
    auto data = make_two_blobs(spec);

    auto cfg = quick_config(3, 37);
    cfg.weight_mode = WeightSelectionMode::PerFold;
    auto report = cross_validate(data.features, data.labels, cfg);
    REQUIRE(report.fold_weights.size() == 3);
    CHECK(report.fold_weights[0] == report.ensemble_weights);  // fold 0 still reported
}

TEST_CASE("fold failures carry the fold index") {
    // Two class-1 samples at k=2 leave one per training split, so the inner
    // selection split cannot stratify and the error names fold 0.
    BlobSpec spec;
    spec.n0 = 20;
    spec.n1 = 20;
    spec.seed = 43;
    auto data = make_two_blobs(spec);
    auto y = data.labels;
    std::size_t ones = 0;
    for (auto& v : y) {
        if (v == 1 && ++ones > 2) v = 0;
    }

    auto cfg = quick_config(2, 41);
    CHECK_THROWS_WITH_AS(cross_validate(data.features, y, cfg), doctest::Contains("fold 0"),
                         TrainError);
}

TEST_CASE("k outside the valid range is rejected") {
    BlobSpec spec;
    spec.n0 = 10;
    spec.n1 = 10;
    spec.seed = 47;
    auto data = make_two_blobs(spec);
    auto cfg = quick_config(1, 43);
    CHECK_THROWS_AS(cross_validate(data.features, data.labels, cfg), UsageError);
    auto cfg2 = quick_config(11, 43);
    CHECK_THROWS_AS(cross_validate(data.features, data.labels, cfg2), DataError);
}

}  // TEST_SUITE
