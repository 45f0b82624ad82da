#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rsb::cli {

using CsvCell = std::variant<double, std::int64_t, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Reals use 17 significant digits; lines end with '\n'.
/// Throws std::invalid_argument if a row's width differs from the header.
void render_csv(const CsvTable& table, std::ostream& out);

/// Writes to `path`, or to standard output when path is "-".
/// Throws std::runtime_error if the file cannot be written.
void write_csv(const CsvTable& table, const std::string& path);

std::string format_real(double value);

}  // namespace rsb::cli
