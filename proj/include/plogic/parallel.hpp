#ifndef PLOGIC_PARALLEL_HPP
#define PLOGIC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace plogic {

// Runs fn(i) for i in [0, n). Work items must be independent and write only
// to their own preallocated slots, so the merged result is deterministic
// regardless of the thread count.
inline void parallel_for(long long n, int threads,
                         const std::function<void(long long)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  int t = (int)std::min<long long>(threads, n);
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (int k = 0; k < t; ++k) {
    pool.emplace_back([&] {
      for (;;) {
        long long i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace plogic

#endif
