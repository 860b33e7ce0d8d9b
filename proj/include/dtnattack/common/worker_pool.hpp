#pragma once

#include <cstddef>
#include <functional>

namespace dtn {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
///
/// Callers write results into slot i of a pre-sized container, so the
/// outcome never depends on scheduling. The first exception thrown by any
/// task is rethrown on the calling thread after all workers finish.
void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace dtn
