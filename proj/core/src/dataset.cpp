#include "fraudml/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "fraudml/error.hpp"

namespace fraudml {

std::size_t RawDataset::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i) {
        if (column_names[i] == name) return i;
    }
    return npos;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

Cell parse_cell(std::string_view token) {
    if (token.empty()) return Cell::missing();
    const char* first = token.data();
    if (*first == '+') ++first;  // from_chars rejects a leading '+'
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
    if (ptr == token.data() + token.size()) {
        if (ec == std::errc::result_out_of_range) return Cell::missing();  // overflows like 1e999
        if (ec == std::errc()) {
            if (!std::isfinite(value)) return Cell::missing();
            return Cell::num(value);
        }
    }
    return Cell::str(std::string(token));
}

void split_line(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

RawDataset parse_csv(std::string_view text, const std::string& source_name) {
    RawDataset raw;
    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() && pos > text.size()) break;  // trailing newline

        split_line(line, fields);
        if (line_no == 1) {
            std::unordered_set<std::string_view> seen;
            for (auto f : fields) {
                if (f.empty()) throw DataError(source_name + ": empty column name in header");
                if (!seen.insert(f).second) {
                    throw DataError(source_name + ": duplicate column name '" + std::string(f) + "'");
                }
                raw.column_names.emplace_back(f);
            }
            continue;
        }
        if (fields.size() != raw.column_names.size()) {
            std::ostringstream msg;
            msg << source_name << ": line " << line_no << ": expected " << raw.column_names.size()
                << " cells, got " << fields.size();
            throw DataError(msg.str());
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (auto f : fields) row.push_back(parse_cell(f));
        raw.rows.push_back(std::move(row));
    }

    if (raw.column_names.empty()) throw DataError(source_name + ": missing header row");
    return raw;
}

RawDataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DataError("load_csv: read failure on '" + path + "'");
    return parse_csv(buf.str(), path);
}

void validate_schema(const RawDataset& raw, const std::string& label_column) {
    std::size_t label_idx = raw.column_index(label_column);
    if (label_idx == RawDataset::npos) {
        throw DataError("validate_schema: label column '" + label_column + "' not found");
    }

    std::ostringstream violations;
    std::size_t count = 0;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto& row = raw.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == label_idx) continue;
            if (row[c].kind == Cell::Kind::Text) {
                if (count) violations << ", ";
                violations << "(row " << r << ", column '" << raw.column_names[c] << "', value '"
                           << row[c].text << "')";
                ++count;
            }
        }
    }
    if (count) {
        std::ostringstream msg;
        msg << "validate_schema: " << count << " non-numeric feature cell(s): " << violations.str();
        throw DataError(msg.str());
    }
}

RawDataset drop_incomplete(const RawDataset& raw, std::size_t* removed) {
    RawDataset out;
    out.column_names = raw.column_names;
    for (const auto& row : raw.rows) {
        bool complete = true;
        for (const auto& cell : row) {
            if (cell.kind == Cell::Kind::Missing) {
                complete = false;
                break;
            }
        }
        if (complete) out.rows.push_back(row);
    }
    if (removed) *removed = raw.rows.size() - out.rows.size();
    if (out.rows.empty() && !raw.rows.empty()) {
        throw DataError("drop_incomplete: all " + std::to_string(raw.rows.size()) +
                        " rows contain missing cells");
    }
    return out;
}

namespace {

// Canonical text of a label cell, for LabelMap lookup. Numeric labels use
// the shortest round-trip form, so 0.0 -> "0" and 1.0 -> "1".
std::string label_cell_text(const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Number: return format_double(cell.number);
        case Cell::Kind::Text: return cell.text;
        case Cell::Kind::Missing: break;
    }
    throw DataError("to_dataset: missing label cell; run drop_incomplete first");
}

}  // namespace

Dataset to_dataset(const RawDataset& raw, const std::string& label_column, const LabelMap& label_map) {
    std::size_t label_idx = raw.column_index(label_column);
    if (label_idx == RawDataset::npos) {
        throw DataError("to_dataset: label column '" + label_column + "' not found");
    }
    if (raw.column_names.size() < 2) throw DataError("to_dataset: no feature columns");

    Dataset ds;
    for (std::size_t c = 0; c < raw.column_names.size(); ++c) {
        if (c != label_idx) ds.feature_names.push_back(raw.column_names[c]);
    }

    ds.features = Matrix(raw.rows.size(), ds.feature_names.size());
    ds.labels.reserve(raw.rows.size());
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto& row = raw.rows[r];
        std::size_t out_c = 0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == label_idx) continue;
            if (row[c].kind != Cell::Kind::Number) {
                std::ostringstream msg;
                msg << "to_dataset: non-numeric feature cell at row " << r << ", column '"
                    << raw.column_names[c] << "'";
                throw DataError(msg.str());
            }
            ds.features(r, out_c++) = row[c].number;
        }

        std::string text = label_cell_text(row[label_idx]);
        int code = label_map.code_of(text);
        if (code < 0) throw DataError("to_dataset: unseen label value '" + text + "'");
        if (code > 1) {
            throw DataError("to_dataset: label '" + text + "' maps to code " +
                            std::to_string(code) + "; binary labels required");
        }
        ds.labels.push_back(code);
    }
    return ds;
}

std::string write_csv(const Dataset& ds, const std::string& label_column) {
    std::string out;
    for (std::size_t c = 0; c < ds.feature_names.size(); ++c) {
        out += ds.feature_names[c];
        out += ',';
    }
    out += label_column;
    out += '\n';
    for (std::size_t r = 0; r < ds.features.rows(); ++r) {
        auto row = ds.features.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += format_double(row[c]);
            out += ',';
        }
        out += std::to_string(ds.labels[r]);
        out += '\n';
    }
    return out;
}

void write_csv_file(const Dataset& ds, const std::string& label_column, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("write_csv_file: cannot open '" + path + "' for writing");
    out << write_csv(ds, label_column);
    if (!out) throw DataError("write_csv_file: write failure on '" + path + "'");
}

}  // namespace fraudml
