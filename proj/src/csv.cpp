#include "zeno/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace zeno {

const char* version() { return ZENOLAB_VERSION; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_metadata(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_metadata(std::string key, double value) { add_metadata(std::move(key), format_double(value)); }

void CsvTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match column count");
    rows.push_back(std::move(row));
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::out_of_range("no column named " + name);
}

std::vector<double> CsvTable::column(const std::string& name) const {
    const auto idx = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
}

void CsvTable::write(std::ostream& os) const {
    os << "# zenolab " << version() << '\n';
    for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace zeno
