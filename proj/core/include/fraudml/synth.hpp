#pragma once

#include <cstdint>
#include <vector>

#include "fraudml/matrix.hpp"

namespace fraudml {

// Two Gaussian blobs on the diagonal: class 0 centered at -separation/2 in
// every coordinate, class 1 at +separation/2, unit isotropic noise.
struct BlobSpec {
    std::size_t n0 = 100;
    std::size_t n1 = 100;
    std::size_t dim = 2;
    double separation = 4.0;
    std::uint64_t seed = 0;
};

struct SynthData {
    Matrix features;
    std::vector<int> labels;
};

// Deterministic for a given spec; rows come out in shuffled order so class
// blocks do not line up with fold boundaries.
SynthData make_two_blobs(const BlobSpec& spec);

}  // namespace fraudml
