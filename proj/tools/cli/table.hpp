#pragma once

// Tabular output shared by every subcommand.
//
// CSV dialect: '#'-prefixed "key: value" metadata lines, one header row, then
// comma-separated rows. Numbers use 12 significant digits; missing values are
// written as nan. The JSON form carries the same content as
// {"metadata": {...}, "columns": [...], "rows": [[...], ...]} with nan as null.

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wgqed::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void meta(const std::string& key, const std::string& value) { metadata.emplace_back(key, value); }
    void meta(const std::string& key, double value);
};

/// %.12g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace wgqed::cli
