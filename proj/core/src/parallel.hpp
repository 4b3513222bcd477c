#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace apspectra::detail {

/// Runs fn(i) for i in [0, count) over contiguous chunks on worker threads.
/// fn must not throw and must write only to index-owned state; callers merge
/// in index order, so results never depend on the thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t min_per_thread = 8) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t threads = std::min(hw, std::max<std::size_t>(1, count / std::max<std::size_t>(1, min_per_thread)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
}

}  // namespace apspectra::detail
