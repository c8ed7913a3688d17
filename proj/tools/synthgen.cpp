// Regenerates the bundled synthetic datasets. The outputs are checked in;
// rerun this only when the generator itself changes.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "fraudml/dataset.hpp"
#include "fraudml/error.hpp"
#include "fraudml/synth.hpp"

namespace {

using namespace fraudml;

Dataset blobs_to_dataset(const SynthData& synth) {
    Dataset ds;
    ds.features = synth.features;
    ds.labels = synth.labels;
    for (std::size_t j = 0; j < synth.features.cols(); ++j)
        ds.feature_names.push_back("f" + std::to_string(j + 1));
    return ds;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out_dir = "data";
    if (argc == 2) {
        out_dir = argv[1];
    } else if (argc > 2) {
        std::cerr << "usage: synthgen [out_dir]\n";
        return 1;
    }

    try {
        std::filesystem::create_directories(out_dir);

        // Imbalanced set: 1000 normal vs 50 fraudulent, overlapping enough
        // that nothing scores perfectly.
        BlobSpec imbalanced;
        imbalanced.n0 = 1000;
        imbalanced.n1 = 50;
        imbalanced.dim = 4;
        imbalanced.separation = 2.0;
        imbalanced.seed = 7;
        const std::string imbalanced_path = out_dir + "/synth_imbalanced.csv";
        write_csv_file(blobs_to_dataset(make_two_blobs(imbalanced)), "Class", imbalanced_path);
        std::printf("wrote %s (%zu rows)\n", imbalanced_path.c_str(),
                    imbalanced.n0 + imbalanced.n1);

        // Separable set: far-apart blobs every model classifies perfectly.
        BlobSpec separable;
        separable.n0 = 100;
        separable.n1 = 100;
        separable.dim = 2;
        separable.separation = 10.0;
        separable.seed = 11;
        const std::string separable_path = out_dir + "/synth_separable.csv";
        write_csv_file(blobs_to_dataset(make_two_blobs(separable)), "Class", separable_path);
        std::printf("wrote %s (%zu rows)\n", separable_path.c_str(), separable.n0 + separable.n1);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
