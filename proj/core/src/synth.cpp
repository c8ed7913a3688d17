#include "fraudml/synth.hpp"

#include <numeric>

#include "fraudml/error.hpp"
#include "fraudml/rng.hpp"

namespace fraudml {

SynthData make_two_blobs(const BlobSpec& spec) {
    if (spec.n0 == 0 || spec.n1 == 0) throw UsageError("make_two_blobs: both classes need samples");
    if (spec.dim == 0) throw UsageError("make_two_blobs: dim must be >= 1");

    const std::size_t n = spec.n0 + spec.n1;
    Rng rng(derive_seed(spec.seed, "blobs"));

    Matrix features(n, spec.dim);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i < spec.n0 ? 0 : 1;
        const double center = (label == 0 ? -0.5 : 0.5) * spec.separation;
        auto row = features.row(i);
        for (std::size_t j = 0; j < spec.dim; ++j) row[j] = center + normal01(rng);
        labels[i] = label;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);

    SynthData out;
    out.features = features.take_rows(order);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels[i] = labels[order[i]];
    return out;
}

}  // namespace fraudml
