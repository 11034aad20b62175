#pragma once

#include <cstddef>
#include <functional>

namespace swme {

/// Worker count: SWME_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(begin, end) on disjoint contiguous chunks of [0, n), possibly
/// concurrently. Exceptions from any chunk are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace swme
