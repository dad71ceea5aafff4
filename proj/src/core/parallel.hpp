#pragma once

#include <cstddef>
#include <functional>

namespace minkflow {

// Worker cap: MINKFLOW_THREADS when set (>= 1), else hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n); results must be written to caller-owned slots so
// the output is independent of the schedule.  Exceptions are captured and the
// first one is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace minkflow
