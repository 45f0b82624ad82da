#pragma once

#include <cstddef>
#include <functional>

namespace rsb {

/// Worker count for scans: RSB_THREADS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers. Indices are
/// handed out dynamically; results must be written to per-index slots. If any
/// call throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = thread_count());

}  // namespace rsb
