#include "rsb/cli/grid.hpp"

#include "rsb/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rsb::cli {

namespace {

double parse_real(const std::string& token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: '" + token + "'");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, sep)) parts.push_back(token);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

double snap(double v) { return std::abs(v) <= 1e-12 ? 0.0 : v; }

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("range must be start:end:step");
        const double start = parse_real(parts[0]);
        const double end = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
        if (end < start) throw std::invalid_argument("range end precedes start");
        auto count = static_cast<std::size_t>(std::floor((end - start) / step));
        if (start + static_cast<double>(count + 1) * step <= end + 1e-12) ++count;
        while (count > 0 && start + static_cast<double>(count) * step > end + 1e-12) --count;
        std::vector<double> grid;
        grid.reserve(count + 1);
        for (std::size_t i = 0; i <= count; ++i)
            grid.push_back(snap(start + static_cast<double>(i) * step));
        return grid;
    }
    std::vector<double> grid;
    for (const auto& token : split(text, ',')) grid.push_back(snap(parse_real(token)));
    if (grid.empty()) throw std::invalid_argument("empty grid");
    return grid;
}

std::vector<double> parse_geometric_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw std::invalid_argument("geometric grid must be beta0:depth");
    const double beta0 = parse_real(parts[0]);
    const double depth = parse_real(parts[1]);
    if (depth < 0 || depth != std::floor(depth) || depth > 60)
        throw std::invalid_argument("geometric depth must be an integer in [0, 60]");
    return geometric_beta_grid(beta0, static_cast<std::size_t>(depth));
}

}  // namespace rsb::cli
