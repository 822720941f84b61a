#pragma once

#include <cstddef>
#include <functional>

namespace polarmax {

/// Worker count: POLARMAX_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int default_thread_count();

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled by exactly one call, so results written to per-index slots are
/// identical for every thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace polarmax
