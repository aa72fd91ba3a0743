#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace grandmorrey {

// Worker cap: GRANDMORREY_THREADS if set and positive, else hardware threads.
inline int worker_count() {
  static const int count = [] {
    if (const char* env = std::getenv("GRANDMORREY_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return count;
}

// Runs fn(i) for i in [0, n). Each index must write only its own outputs;
// reductions happen after the join, in index order, so results do not depend
// on the number of workers.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  if (workers > n) workers = n;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
    int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace grandmorrey
