#pragma once

// Shared oracles and plumbing for the unit/property/integration suites and
// the acceptance runner.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fraudml/matrix.hpp"

namespace testsupport {

// Brute-force AUC: P(score_pos > score_neg) + 0.5 * P(equal), the
// probabilistic definition, independent of the trapezoid code under test.
inline double concordance_auc(const std::vector<int>& y, const std::vector<double>& scores) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 1) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

inline double relative_error(double got, double want) {
    double denom = std::max(std::abs(got), std::abs(want));
    if (denom == 0.0) return 0.0;
    return std::abs(got - want) / denom;
}

// Central finite difference of f at x with step h.
template <typename F>
double central_diff(F&& f, double& x, double h = 1e-5) {
    double saved = x;
    x = saved + h;
    double up = f();
    x = saved - h;
    double down = f();
    x = saved;
    return (up - down) / (2.0 * h);
}

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() / ("fraudml_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

// Runs the installed CLI binary with the given argument string, capturing
// combined output. Requires FRAUDML_CLI_PATH from the build.
inline CliResult run_cli(const std::string& args, const TempDir& dir, const std::string& tag) {
    std::string out_path = dir.file("cli_" + tag + ".out");
    std::string cmd = std::string(FRAUDML_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    result.output = read_file(out_path);
    return result;
}

inline std::string data_file(const std::string& name) {
    return std::string(FRAUDML_DATA_DIR) + "/" + name;
}

}  // namespace testsupport
