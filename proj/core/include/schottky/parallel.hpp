#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace schottky {

/// Worker count: hardware concurrency, capped by the SCHOTTKY_THREADS
/// environment variable when it holds a positive integer.
inline std::size_t worker_count() {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SCHOTTKY_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

/// Runs job(0) .. job(jobs-1) on up to `workers` threads. Jobs must write
/// only to their own result slots; the first exception is rethrown.
template <class Job>
void parallel_for(std::size_t jobs, std::size_t workers, Job&& job) {
  workers = std::max<std::size_t>(1, std::min(workers, jobs));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < jobs; i = next++) job(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace schottky
