#pragma once

#include <cstddef>
#include <functional>

namespace bz {

// Worker count: BZCHECK_THREADS if set and positive, else hardware concurrency.
int thread_budget();

// Overrides the budget for the current process (0 restores the default).
void set_thread_budget(int threads);

// Runs body(i) for i in [0, n). Nested calls from a worker run serially.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bz
