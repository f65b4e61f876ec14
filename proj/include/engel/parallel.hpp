// Minimal fork-join helper; thread count from ENGEL_THREADS.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace engel {

inline unsigned thread_count() {
  if (const char* e = std::getenv("ENGEL_THREADS")) {
    int v = std::atoi(e);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i, worker) for i in [0, n) on up to thread_count() workers.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const unsigned t = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i, w);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace engel
