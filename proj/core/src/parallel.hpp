#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace polyclone::detail {

// Runs fn(block) for block = 0..n_blocks-1 on up to `workers` threads.
// Callers keep per-block output slots and merge in block order, so results
// never depend on scheduling.
template <typename Fn>
void for_blocks(std::size_t n_blocks, int workers, Fn&& fn) {
  if (n_blocks == 0) return;
  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(n_blocks)));
  if (n_threads == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) return;
        fn(b);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// Splits [0, total) into at most `chunks` half-open ranges of near-equal size.
inline std::vector<std::pair<std::size_t, std::size_t>> chunk_ranges(std::size_t total,
                                                                     std::size_t chunks) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (total == 0) return ranges;
  chunks = std::max<std::size_t>(1, std::min(chunks, total));
  const std::size_t base = total / chunks;
  const std::size_t extra = total % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t len = base + (c < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

}  // namespace polyclone::detail
