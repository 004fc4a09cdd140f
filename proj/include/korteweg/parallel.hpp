#pragma once

#include <cstddef>
#include <functional>

namespace korteweg {

// Worker count: KORTEWEG_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned worker_count();

// Calls fn(i) for i in [0, n) using up to worker_count() threads. The first
// exception thrown by any call is rethrown on the caller's thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace korteweg
