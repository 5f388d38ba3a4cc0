#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace skewlab {

/// Process-wide worker count; initialised from SKEWLAB_THREADS, default 1.
int default_threads();
void set_default_threads(int n);

/// Runs fn(i) for i in [0, n) on up to `threads` workers with static contiguous chunks.
/// Results written to per-index slots are therefore independent of the thread count.
template <class Fn>
void parallel_for(long n, int threads, Fn&& fn) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const long lo = t * chunk;
        const long hi = std::min(n, lo + chunk);
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace skewlab
