#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "lampmet/errors.hpp"

namespace lampmet::csvutil {

// Splits one line on commas. No quoting support; fields are trimmed of
// surrounding spaces and tabs.
inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::string field = comma == std::string::npos ? line.substr(start)
                                                       : line.substr(start, comma - start);
        std::size_t lo = field.find_first_not_of(" \t");
        std::size_t hi = field.find_last_not_of(" \t");
        fields.push_back(lo == std::string::npos ? std::string() : field.substr(lo, hi - lo + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

// Reads all lines, tolerating CRLF endings and a trailing newline.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Parses a full-width real number; throws ParseError with 1-based row and
// column positions on failure (empty cells included).
inline double parse_number(const std::string& field, std::size_t row, std::size_t column) {
    if (field.empty()) throw ParseError(row, column, "missing value");
    double value = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(row, column, "'" + field + "' is not a number");
    return value;
}

}  // namespace lampmet::csvutil
