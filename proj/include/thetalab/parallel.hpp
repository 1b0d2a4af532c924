#ifndef THETALAB_PARALLEL_HPP
#define THETALAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace thetalab {

/// Worker count: THETA_LAB_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
int thread_count();

/// Runs fn(i) for i in [0, n). Indices are handed out dynamically; fn must
/// only write to storage owned by index i. The first exception thrown by any
/// worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace thetalab

#endif
