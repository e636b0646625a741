#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ergaps {

// Evaluates fn(b) for b in [0, n_blocks) and returns the results indexed by
// block. Each block writes only its own slot and callers reduce the vector in
// block order, so the outcome is identical for any worker count.
template <typename T, typename Fn>
std::vector<T> parallel_blocks(std::size_t n_blocks, int workers, Fn&& fn) {
  std::vector<T> out(n_blocks);
  if (workers <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) out[b] = fn(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) break;
      out[b] = fn(b);
    }
  };
  std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n_blocks);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace ergaps
