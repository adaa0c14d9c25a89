#pragma once

#include <cstddef>
#include <functional>

namespace rwre {

/// Worker count: RWRE_THREADS when set (>=1), hardware concurrency otherwise.
std::size_t thread_budget();

/// Runs fn(0..n-1) across the thread budget. Callers keep determinism by
/// writing results into index-addressed slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace rwre
