#pragma once

#include <string>
#include <vector>

namespace rsb::cli {

/// Parses a parameter grid: "start:end:step" (inclusive of start, inclusive
/// of end when reachable within 1e-12), a comma list "a,b,c", or a single
/// value. Points within 1e-12 of zero are snapped to exactly 0.
std::vector<double> parse_grid(const std::string& text);

/// "beta0:depth" -> 1 - (1 - beta0) 2^-k, k = 0 .. depth.
std::vector<double> parse_geometric_grid(const std::string& text);

}  // namespace rsb::cli
