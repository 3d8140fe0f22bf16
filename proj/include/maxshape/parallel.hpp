#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace maxshape {

// Thread cap: MAXSHAPE_THREADS env var, else hardware concurrency.
inline int thread_cap() {
  if (const char* env = std::getenv("MAXSHAPE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Partitioned loop over [0, n). All writes must go to disjoint locations so
// the result is independent of the partition; that keeps output identical at
// any MAXSHAPE_THREADS setting.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                         std::size_t grain = 4096) {
  const std::size_t threads =
      std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), std::max<std::size_t>(1, n / grain));
  if (threads <= 1 || n == 0) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace maxshape
