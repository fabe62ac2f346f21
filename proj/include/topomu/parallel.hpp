#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace topomu {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers index into
// preallocated result slots, so the outcome is identical to sequential order.
template <typename Fn>
void parallelFor(int jobs, size_t count, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  size_t chunk = (count + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    size_t lo = t * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace topomu
