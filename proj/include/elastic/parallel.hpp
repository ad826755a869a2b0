#pragma once

// Minimal chunked parallel-for. The thread budget is capped by the
// ELASTIC_BOXPLOT_THREADS environment variable (default: hardware
// concurrency). Work is partitioned statically by index, so results are
// deterministic regardless of scheduling.

#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace elastic {

inline std::size_t thread_budget() {
  std::size_t budget = std::thread::hardware_concurrency();
  if (budget == 0) budget = 1;
  if (const char* env = std::getenv("ELASTIC_BOXPLOT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) budget = static_cast<std::size_t>(v);
    } catch (...) {
      // ignore malformed values, keep default
    }
  }
  return budget;
}

// Invokes fn(i) for i in [0, n). Exceptions are rethrown on the caller thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t budget = std::min(thread_budget(), n);
  if (budget <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(budget);
  workers.reserve(budget);
  for (std::size_t w = 0; w < budget; ++w) {
    const std::size_t lo = n * w / budget;
    const std::size_t hi = n * (w + 1) / budget;
    workers.emplace_back([lo, hi, w, &fn, &errors] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace elastic
