#pragma once

#include <thread>
#include <vector>

namespace qhgeo {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers store
// results into index-addressed slots, so the outcome is independent of the
// thread count and interleaving.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + threads - 1) / static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = static_cast<std::size_t>(t) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qhgeo
