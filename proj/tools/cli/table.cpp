#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "wgqed/errors.hpp"

namespace wgqed::cli {

namespace {

std::string render(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return std::get<std::string>(cell);
}

nlohmann::ordered_json to_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return nullptr;
        // Round-trip through the CSV text so both formats carry identical values.
        return std::strtod(format_number(*d).c_str(), nullptr);
    }
    if (const auto* i = std::get_if<long long>(&cell)) return *i;
    return std::get<std::string>(cell);
}

}  // namespace

void Table::meta(const std::string& key, double value) { meta(key, format_number(value)); }

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_csv(const Table& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw Error("table row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render(row[c]);
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) doc["metadata"][key] = value;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto& dst = doc["rows"].emplace_back(nlohmann::ordered_json::array());
        for (const auto& cell : row) dst.push_back(to_json(cell));
    }
    out << doc.dump(1) << '\n';
}

}  // namespace wgqed::cli
