#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace revprime {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic chunked reduction: the index range is cut into fixed-size
// chunks, each chunk is summed sequentially, and the per-chunk results are
// folded in chunk order.  The chunk layout does not depend on the thread
// count, so the result is bit-identical for 1 thread and n threads.
template <class T, class ChunkFn>
inline T chunked_sum(std::int64_t n, std::int64_t chunk, int threads, ChunkFn&& fn) {
  if (n <= 0) return T{};
  if (chunk <= 0) chunk = 1;
  const std::int64_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(static_cast<std::size_t>(n_chunks));

  threads = resolve_threads(threads);
  if (threads == 1 || n_chunks == 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c)
      partial[static_cast<std::size_t>(c)] = fn(c * chunk, std::min(n, (c + 1) * chunk));
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::int64_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        partial[static_cast<std::size_t>(c)] = fn(c * chunk, std::min(n, (c + 1) * chunk));
      }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::int64_t>(threads, n_chunks));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace revprime
