#include "doctest.h"

#include <cmath>
#include <vector>

#include "fraudml/error.hpp"
#include "fraudml/preprocess.hpp"
#include "fraudml/rng.hpp"

using namespace fraudml;

namespace {

Matrix column(std::initializer_list<double> vals) {
    Matrix m(vals.size(), 1);
    std::size_t i = 0;
    for (double v : vals) m(i++, 0) = v;
    return m;
}

}  // namespace

TEST_SUITE("unit") {

TEST_CASE("fit_scaler computes population moments") {
    auto params = fit_scaler(column({1, 2, 3}));
    CHECK(params.means[0] == doctest::Approx(2.0));
    CHECK(params.stds[0] == doctest::Approx(0.816497).epsilon(1e-5));
    CHECK(params.n_fitted == 3);
}

TEST_CASE("fit_scaler gives zero std for a constant column") {
    auto params = fit_scaler(column({5, 5, 5}));
    CHECK(params.means[0] == 5.0);
    CHECK(params.stds[0] == 0.0);
}

TEST_CASE("transform standardizes the fitting column") {
    auto m = column({1, 2, 3});
    auto out = transform(fit_scaler(m), m);
    CHECK(out(0, 0) == doctest::Approx(-1.224745).epsilon(1e-5));
    CHECK(out(1, 0) == doctest::Approx(0.0));
    CHECK(out(2, 0) == doctest::Approx(1.224745).epsilon(1e-5));

    auto refit = fit_scaler(out);
    CHECK(refit.means[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(refit.stds[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transform maps constant columns to zero") {
    auto m = column({5, 5, 5});
    auto out = transform(fit_scaler(m), m);
    for (std::size_t i = 0; i < 3; ++i) CHECK(out(i, 0) == 0.0);
}

TEST_CASE("standardized fitting data has mean 0 and unit variance per column") {
    Rng rng(99);
    Matrix m(40, 3);
    for (auto& v : m.data()) v = normal01(rng) * 3.0 + 1.5;
    auto out = transform(fit_scaler(m), m);
    auto check = fit_scaler(out);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(std::abs(check.means[c]) < 1e-9);
        CHECK(std::abs(check.stds[c] - 1.0) < 1e-9);
    }
}

TEST_CASE("standardization is invariant to positive affine rescaling") {
    Rng rng(7);
    Matrix a(25, 2);
    for (auto& v : a.data()) v = uniform(rng, -4.0, 4.0);
    Matrix b = a;
    const double alpha = 3.5, beta = -11.0;
    for (auto& v : b.data()) v = alpha * v + beta;

    auto ta = transform(fit_scaler(a), a);
    auto tb = transform(fit_scaler(b), b);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            CHECK(ta(i, j) == doctest::Approx(tb(i, j)).epsilon(1e-9));
}

TEST_CASE("transform rejects a width mismatch") {
    auto params = fit_scaler(column({1, 2, 3}));
    CHECK_THROWS_AS(transform(params, Matrix(2, 2)), DataError);
}

TEST_CASE("LabelMap assigns codes in insertion order") {
    LabelMap map;
    map.add("x");
    map.add("y");
    CHECK(map.code_of("x") == 0);
    CHECK(map.code_of("y") == 1);
    CHECK(map.code_of("z") == -1);
    CHECK(map.category_of(1) == "y");
    CHECK(map.size() == 2);
}

TEST_CASE("LabelMap rejects duplicate categories") {
    LabelMap map;
    map.add("x");
    CHECK_THROWS_AS(map.add("x"), UsageError);
}

TEST_CASE("binary01 maps the numeric labels") {
    auto map = LabelMap::binary01();
    CHECK(map.code_of("0") == 0);
    CHECK(map.code_of("1") == 1);
}

TEST_CASE("encode_labels uses first-appearance order") {
    auto enc = encode_labels({"b", "a", "b", "c"});
    CHECK(enc.codes == std::vector<int>{0, 1, 0, 2});
    CHECK(enc.map.categories() == std::vector<std::string>{"b", "a", "c"});

    auto single = encode_labels({"a"});
    CHECK(single.codes == std::vector<int>{0});
    CHECK(single.map.size() == 1);
}

TEST_CASE("encode_labels forces the normal/fraudulent convention") {
    auto enc = encode_labels({"fraudulent", "normal", "fraudulent"});
    CHECK(enc.map.code_of("normal") == 0);
    CHECK(enc.map.code_of("fraudulent") == 1);
    CHECK(enc.codes == std::vector<int>{1, 0, 1});

    auto mixed = encode_labels({"Fraudulent", "NORMAL"});
    CHECK(mixed.codes == std::vector<int>{1, 0});
}

TEST_CASE("decode inverts encode on the input list") {
    std::vector<std::string> raw{"normal", "fraudulent", "normal", "normal"};
    auto enc = encode_labels(raw);
    CHECK(decode_labels(enc.map, enc.codes) == raw);
}

TEST_CASE("decode rejects out-of-range codes") {
    auto map = LabelMap::binary01();
    CHECK_THROWS_AS(decode_labels(map, {0, 2}), DataError);
}

}  // TEST_SUITE
