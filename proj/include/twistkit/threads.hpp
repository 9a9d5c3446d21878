#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace twistkit {

// Worker count: TWISTKIT_THREADS if set and positive, else hardware
// concurrency, min 1.
inline unsigned worker_count() {
  if (const char* env = std::getenv("TWISTKIT_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n > 0) return (unsigned)n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(i) for i in [0, n) across workers.  fn must be thread-safe; with a
// single worker everything runs inline on the calling thread.  The first
// exception thrown by any worker is rethrown here once all workers stop.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  auto run = [&] {
    for (size_t i = next.fetch_add(1); i < n && !failed.load(); i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  for (unsigned w = 1; w < workers && w < n; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace twistkit
