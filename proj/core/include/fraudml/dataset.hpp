#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fraudml/matrix.hpp"
#include "fraudml/preprocess.hpp"

namespace fraudml {

// One parsed CSV cell: a finite number, a text label, or missing. Non-finite
// numeric literals (inf, nan) are treated as missing so standardization only
// ever sees finite values.
struct Cell {
    enum class Kind { Number, Text, Missing };

    Kind kind = Kind::Missing;
    double number = 0.0;
    std::string text;  // set only for Kind::Text

    static Cell missing() { return {}; }
    static Cell num(double v) { return {Kind::Number, v, {}}; }
    static Cell str(std::string s) { return {Kind::Text, 0.0, std::move(s)}; }

    bool operator==(const Cell&) const = default;
};

// The raw transaction table, before cleaning. Every row has exactly
// column_names.size() cells and column names are unique.
struct RawDataset {
    std::vector<std::string> column_names;
    std::vector<std::vector<Cell>> rows;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t column_index(const std::string& name) const;
};

// Clean numeric feature matrix plus binary labels; what every later stage
// consumes.
struct Dataset {
    Matrix features;                        // n_samples x n_features, all finite
    std::vector<int> labels;                // 0 = normal, 1 = fraudulent
    std::vector<std::string> feature_names;
};

// Parses CSV text: first line is the header, comma delimiter, '.' decimal
// point, no quoting. Unix and Windows line endings both accepted; empty cells
// parse as missing. A row whose cell count differs from the header is an
// error naming the offending line.
RawDataset parse_csv(std::string_view text, const std::string& source_name = "<memory>");
RawDataset load_csv(const std::string& path);

// Succeeds iff label_column exists and every non-label cell is numeric or
// missing; otherwise throws listing all violating (row, column) pairs.
void validate_schema(const RawDataset& raw, const std::string& label_column);

// Keeps only rows with no missing cells, preserving order. Reports the
// number removed through `removed` when given. Removing every row is an
// error.
RawDataset drop_incomplete(const RawDataset& raw, std::size_t* removed = nullptr);

// Splits a complete RawDataset into features (all non-label columns, header
// order) and labels mapped through label_map.
Dataset to_dataset(const RawDataset& raw, const std::string& label_column, const LabelMap& label_map);

// Serializes with shortest round-trip number formatting, so load_csv of the
// output reproduces the dataset bit for bit.
std::string write_csv(const Dataset& ds, const std::string& label_column);
void write_csv_file(const Dataset& ds, const std::string& label_column, const std::string& path);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace fraudml
