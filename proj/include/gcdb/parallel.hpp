#pragma once

// Deterministic block-parallel reduction. Work is split into fixed-size
// blocks independent of the worker count, and per-block results are merged
// in ascending block order, so floating-point reductions are bit-identical
// no matter how many threads run them.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace gcdb {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <class T, class BlockFn, class MergeFn>
T parallel_block_reduce(int64_t lo, int64_t hi, int64_t block, int workers,
                        T init, BlockFn&& block_fn, MergeFn&& merge) {
  if (hi <= lo) return init;
  if (block < 1) block = 1;
  const int64_t nblocks = (hi - lo + block - 1) / block;
  workers = resolve_workers(workers);

  std::vector<T> partial(static_cast<size_t>(nblocks));
  if (workers <= 1 || nblocks == 1) {
    for (int64_t i = 0; i < nblocks; ++i) {
      const int64_t a = lo + i * block;
      partial[static_cast<size_t>(i)] = block_fn(a, std::min(hi, a + block));
    }
  } else {
    std::atomic<int64_t> next{0};
    auto run = [&] {
      for (;;) {
        const int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= nblocks) break;
        const int64_t a = lo + i * block;
        partial[static_cast<size_t>(i)] = block_fn(a, std::min(hi, a + block));
      }
    };
    std::vector<std::thread> pool;
    const int n = static_cast<int>(std::min<int64_t>(workers, nblocks));
    pool.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  T acc = std::move(init);
  for (auto& p : partial) acc = merge(std::move(acc), std::move(p));
  return acc;
}

// Neumaier-compensated accumulator; used for every real-valued reduction so
// results do not depend on iteration or thread order beyond block layout.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace gcdb
