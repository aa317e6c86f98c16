#ifndef COOPEM_TABLE_IO_HPP
#define COOPEM_TABLE_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopem/format.hpp"

namespace coopem {

// Column-named numeric table; the common shape of every tabular output.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// RFC-4180-style CSV: header row, '.' decimal separator, 12 significant
// digits, '\n' line endings.
inline void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_number(row[c]);
        os << "\n";
    }
}

// Column-oriented JSON: {"col": [...], ...}, values rounded to 12
// significant digits.
inline nlohmann::json table_to_json(const Table& table) {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& row : table.rows) col.push_back(round_12sig(row[c]));
        out[table.columns[c]] = std::move(col);
    }
    return out;
}

} // namespace coopem

#endif
