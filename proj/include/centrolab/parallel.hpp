#pragma once

#include <cstddef>
#include <functional>

namespace centrolab {

/// Worker count for parallel loops. A positive request wins; otherwise the
/// CENTROLAB_THREADS environment variable, otherwise the hardware count.
std::size_t resolve_threads(std::size_t requested);

/// Runs body(i) for i in [0, count) on `threads` workers pulling indices from a
/// shared counter. Callers write results into per-index slots so the outcome
/// never depends on scheduling. The first exception thrown by any body is
/// rethrown after all workers have joined.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace centrolab
