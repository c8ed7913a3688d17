#include <benchmark/benchmark.h>

#include "fraudml/metrics.hpp"
#include "fraudml/preprocess.hpp"
#include "fraudml/resample.hpp"
#include "fraudml/rng.hpp"
#include "fraudml/synth.hpp"

using namespace fraudml;

static void BM_IhtUndersample(benchmark::State& state) {
    BlobSpec spec;
    spec.n0 = static_cast<std::size_t>(state.range(0));
    spec.n1 = spec.n0 / 10;
    spec.dim = 8;
    spec.separation = 2.0;
    spec.seed = 42;
    auto data = make_two_blobs(spec);
    auto scaled = transform(fit_scaler(data.features), data.features);
    ResampleConfig cfg;
    cfg.seed = 1;
    for (auto _ : state) {
        auto res = iht_undersample(scaled, data.labels, cfg);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_IhtUndersample)->Arg(1000)->Arg(4000);

static void BM_RocCurve(benchmark::State& state) {
    Rng rng(3);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<int> y(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = bounded(rng, 2) ? 1 : 0;
        scores[i] = uniform01(rng);
    }
    for (auto _ : state) {
        auto curve = roc_curve(y, scores);
        benchmark::DoNotOptimize(auc(curve));
    }
}
BENCHMARK(BM_RocCurve)->Arg(1000)->Arg(100000);

static void BM_FitScaler(benchmark::State& state) {
    BlobSpec spec;
    spec.n0 = static_cast<std::size_t>(state.range(0)) / 2;
    spec.n1 = spec.n0;
    spec.dim = 16;
    spec.seed = 42;
    auto data = make_two_blobs(spec);
    for (auto _ : state) {
        auto params = fit_scaler(data.features);
        benchmark::DoNotOptimize(transform(params, data.features));
    }
}
BENCHMARK(BM_FitScaler)->Arg(1000)->Arg(10000);
