#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace icfb {

// Sweep parallelism, capped by the IC_FEEDBACK_THREADS environment variable.
inline unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("IC_FEEDBACK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

// Runs fn(i) for i in [0, count) across worker threads. Callers own the
// ordering of results; indices are handed out atomically.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(thread_budget(), count == 0 ? 1 : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace icfb
