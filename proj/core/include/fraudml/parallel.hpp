#pragma once

#include <cstddef>
#include <functional>

namespace fraudml {

// Machine parallelism, at least 1.
int default_threads();

// Runs fn(i) for every i in [0, n), striped across up to `threads` workers
// (0 or negative means default_threads()). Callers must write results only
// into slot i, which keeps the outcome independent of scheduling. The first
// exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace fraudml
