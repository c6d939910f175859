#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace coexp::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // 1-based line number of each row in the source (for error messages).
    std::vector<std::size_t> line_numbers;

    int column(const std::string& name) const;        // -1 if absent
    int require_column(const std::string& name) const;  // throws if absent
};

// Reads a comma-separated table with a header row. Leading '#' lines are
// treated as comments; fields are trimmed; no embedded-comma quoting.
Table read(std::istream& in, const std::string& source_name);
Table read_file(const std::string& path);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace coexp::csv
