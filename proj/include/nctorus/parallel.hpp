#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nctorus {

/// Worker budget: NC_TORUS_THREADS if set (clamped to >= 1), else the
/// hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("NC_TORUS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs f(i) for i in [0, n). Results must be written to caller-owned slots
/// indexed by i so the outcome is independent of scheduling. Serial when the
/// budget is 1. The first exception (if any) is rethrown on the caller.
template <typename F>
void parallel_for(long n, F&& f) {
  const int workers = thread_budget();
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::atomic<long> next{0};
  const int use = static_cast<int>(std::min<long>(workers, n));
  pool.reserve(use);
  for (int w = 0; w < use; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nctorus
