#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace depthfill {

/// 0 means one worker per hardware thread.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(y_begin, y_end) over disjoint row bands. fn must only write rows
/// inside its band.
template <typename Fn>
void parallel_rows(int height, int threads, Fn&& fn) {
  const int workers = std::min(resolve_threads(threads), std::max(height, 1));
  if (workers <= 1) {
    fn(0, height);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const int band = (height + workers - 1) / workers;
  for (int y0 = 0; y0 < height; y0 += band) {
    pool.emplace_back([&fn, y0, y1 = std::min(height, y0 + band)] { fn(y0, y1); });
  }
}

}  // namespace depthfill
