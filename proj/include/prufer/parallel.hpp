#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace prufer {

// Worker count: explicit request, else PRUFER_WORKERS, else the hardware.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PRUFER_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Splits [0, total) into `workers` contiguous ranges and runs
// fn(worker_index, lo, hi) on each, joining all threads before returning.
// Workers own disjoint ranges, so results merged associatively afterwards
// do not depend on the worker count.
template <typename Count, typename F>
inline void parallel_ranges(Count total, int workers, F&& fn) {
  if (workers <= 1 || total == 0) {
    fn(0, Count{0}, total);
    return;
  }
  const Count w = static_cast<Count>(workers);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int k = 0; k < workers; ++k) {
    const Count lo = total / w * static_cast<Count>(k) +
                     std::min<Count>(static_cast<Count>(k), total % w);
    Count hi = lo + total / w;
    if (static_cast<Count>(k) < total % w) ++hi;
    threads.emplace_back([k, lo, hi, &fn] { fn(k, lo, hi); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace prufer
