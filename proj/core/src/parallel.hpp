#pragma once

#include <cstddef>
#include <functional>

namespace radial::detail {

/// Worker count: RADIAL_THREADS if set to a positive integer, else hardware
/// concurrency.
std::size_t thread_count();

/// Runs fn(i) for i in [0, count) on thread_count() workers. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace radial::detail
