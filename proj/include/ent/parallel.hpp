// Small work-sharing loop used by the MI pipeline and the benchmark harness.
// Workers pull indices from a shared counter; callers get determinism by
// writing results into preallocated per-index slots and reducing in index
// order afterwards.
#pragma once

#include <cstddef>
#include <functional>

namespace ent::detail {

// Runs body(i) for i in [0, count). threads == 1 runs inline, threads == 0
// picks the hardware concurrency. The first exception thrown by any worker
// is rethrown on the calling thread once all workers have stopped.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ent::detail
