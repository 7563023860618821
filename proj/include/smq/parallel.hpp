#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "smq/numeric.hpp"

namespace smq {

/// Worker count for data-parallel loops. Defaults to $SMQ_THREADS, else the hardware count.
int thread_count();
void set_thread_count(int threads);

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunk boundaries depend only on
/// `count` and the thread count, and callers write results by index, so output is deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

/// Pairwise summation in a fixed order.
CDouble pairwise_sum(const CDouble* values, std::size_t count);
inline CDouble pairwise_sum(const std::vector<CDouble>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace smq
