#pragma once

#include <cstddef>
#include <functional>

namespace specband {

// Worker cap: SPECBAND_THREADS if set (>=1), else hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; each
// index writes only its own output slot, so results do not depend on the
// thread count. Falls back to a plain loop when n is small or one worker
// is configured.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace specband
