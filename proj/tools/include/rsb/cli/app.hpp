#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;

/// Entry point of the `rsb` tool. `args` excludes the program name. CSV sent
/// to "-" and human-readable summaries go to `out`; diagnostics go to `err`.
///
/// Exit codes: 0 success, 1 usage or input error, 2 solver failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// File names written by the `example` subcommand, one per epsilon in {0, 0.01, 0.05}.
std::vector<std::string> example_file_names();

}  // namespace rsb::cli
