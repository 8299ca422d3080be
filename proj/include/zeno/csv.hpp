// csv.hpp - numeric CSV tables with '#' metadata header lines

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zeno {

/// Column-named numeric table. Values are written with 17 significant digits
/// so doubles round-trip exactly; metadata lines are emitted as "# key: value".
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_metadata(std::string key, std::string value);
    void add_metadata(std::string key, double value);
    void add_row(std::vector<double> row);

    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;

    void write(std::ostream& os) const;
    std::string to_string() const;
};

/// 17 significant digits ("%.17g"); reads back to the same double.
std::string format_double(double v);

/// Library version stamped into every output header.
const char* version();

}  // namespace zeno
