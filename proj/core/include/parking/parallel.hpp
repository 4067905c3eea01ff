#pragma once

#include <cstddef>
#include <functional>

namespace parking {

/// Environment variable that overrides the worker count.
inline constexpr const char* worker_env_var = "PARKING_WORKERS";

/// Worker count from PARKING_WORKERS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for every i in [0, count) across `workers` threads (0 selects
/// worker_count()). Indices are claimed dynamically; callers write results to
/// per-index slots so output never depends on scheduling. Every index runs;
/// if any throw, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace parking
