#include "rsb/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace rsb::cli {

std::string format_real(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void render_csv(const CsvTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("CSV row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_real(v);
                    else
                        out << v;
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_csv(const CsvTable& table, const std::string& path) {
    if (path == "-") {
        render_csv(table, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    render_csv(table, out);
    out.close();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace rsb::cli
