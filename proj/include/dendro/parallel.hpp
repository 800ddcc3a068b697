#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace dendro {

// Worker count: DENDRO_THREADS if set and positive, else the hardware
// concurrency.
inline int thread_count() {
  if (const char* s = std::getenv("DENDRO_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Run f(i) for i in [0, n) and return the results in index order.
template <class F>
auto parallel_map(size_t n, F f) -> std::vector<decltype(f(size_t{0}))> {
  std::vector<decltype(f(size_t{0}))> out(n);
  const size_t workers = std::min<size_t>(n, static_cast<size_t>(thread_count()));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i; !failed && (i = next++) < n;) {
        try {
          out[i] = f(i);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace dendro
