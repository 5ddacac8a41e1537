#pragma once

#include <cstddef>
#include <functional>

namespace curvebump {

/// Worker count: CURVEBUMP_THREADS if set to a positive integer, otherwise
/// the hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, count). Iterations must write disjoint outputs.
/// Calls made from inside a worker run serially on that worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace curvebump
