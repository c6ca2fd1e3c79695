#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vmafc {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled
/// exactly once and results must be written to per-index slots, so the output
/// does not depend on the thread count. The first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const auto workers =
      static_cast<std::size_t>(std::clamp<long>(threads, 1, static_cast<long>(std::max<std::size_t>(n, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace vmafc
