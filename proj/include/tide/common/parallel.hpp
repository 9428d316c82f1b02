#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tide {

// Applies `fn(i)` for i in [0, n) on up to `workers` threads and returns
// the results indexed by input position, so output order never depends on
// scheduling. `fn` must be safe to call concurrently.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> results(n);
  if (n == 0) return results;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  unsigned count = workers;
  if (count > n) count = static_cast<unsigned>(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(count);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace tide
