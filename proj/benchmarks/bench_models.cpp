#include <benchmark/benchmark.h>

#include "fraudml/decision_tree.hpp"
#include "fraudml/knn.hpp"
#include "fraudml/logistic.hpp"
#include "fraudml/mlp.hpp"
#include "fraudml/random_forest.hpp"
#include "fraudml/synth.hpp"

using namespace fraudml;

namespace {

SynthData bench_data(std::size_t n_per_class, std::size_t dim) {
    BlobSpec spec;
    spec.n0 = n_per_class;
    spec.n1 = n_per_class;
    spec.dim = dim;
    spec.separation = 2.0;
    spec.seed = 42;
    return make_two_blobs(spec);
}

}  // namespace

static void BM_DecisionTreeTrain(benchmark::State& state) {
    auto data = bench_data(static_cast<std::size_t>(state.range(0)), 8);
    DTParams params;
    params.seed = 1;
    for (auto _ : state) {
        auto model = DecisionTree::train(data.features, data.labels, params);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_DecisionTreeTrain)->Arg(250)->Arg(1000);

static void BM_RandomForestTrain(benchmark::State& state) {
    auto data = bench_data(250, 8);
    RFParams params;
    params.n_trees = static_cast<int>(state.range(0));
    params.seed = 1;
    for (auto _ : state) {
        auto model = RandomForest::train(data.features, data.labels, params);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_RandomForestTrain)->Arg(10)->Arg(50);

static void BM_LogisticFit(benchmark::State& state) {
    auto data = bench_data(static_cast<std::size_t>(state.range(0)), 8);
    LogisticConfig cfg;
    cfg.epochs = 100;
    cfg.seed = 1;
    for (auto _ : state) {
        auto model = fit_logistic(data.features, data.labels, cfg);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_LogisticFit)->Arg(250)->Arg(1000);

static void BM_KnnPredict(benchmark::State& state) {
    auto data = bench_data(static_cast<std::size_t>(state.range(0)), 8);
    KNNParams params;
    auto model = KnnModel::train(data.features, data.labels, params);
    for (auto _ : state) {
        auto probs = model.predict_proba(data.features);
        benchmark::DoNotOptimize(probs);
    }
}
BENCHMARK(BM_KnnPredict)->Arg(250)->Arg(1000);

static void BM_MlpTrain(benchmark::State& state) {
    auto data = bench_data(250, 8);
    MLPParams params;
    params.hidden_layers = {16};
    params.epochs = static_cast<int>(state.range(0));
    params.seed = 1;
    for (auto _ : state) {
        auto model = MlpModel::train(data.features, data.labels, params);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_MlpTrain)->Arg(10)->Arg(50);

BENCHMARK_MAIN();
