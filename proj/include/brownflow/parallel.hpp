#pragma once

#include <cstddef>
#include <functional>

namespace brownflow {

// Thread count from an explicit request, then BROWNFLOW_THREADS, then the
// hardware. Always at least 1.
int resolve_threads(int requested = 0);

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items must
// write to disjoint outputs; the first exception is rethrown after joining.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace brownflow
