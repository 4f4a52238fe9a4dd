#pragma once

#include <cstddef>
#include <functional>

namespace lrlogit {

/// Worker count: LRLOGIT_THREADS when set and positive, otherwise the
/// hardware concurrency (0 = auto).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is executed exactly once;
/// callers write results into per-index slots so output never depends on
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lrlogit
