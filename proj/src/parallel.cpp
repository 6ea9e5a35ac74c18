#include "hyperdet/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>

namespace hyperdet {

int available_threads() { return omp_get_max_threads(); }

std::optional<std::size_t> first_failure_serial(std::size_t count,
                                                const std::function<bool(std::size_t)>& ok) {
  for (std::size_t i = 0; i < count; ++i) {
    if (!ok(i)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_failure_parallel(std::size_t count,
                                                  const std::function<bool(std::size_t)>& ok) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> first{none};
  std::exception_ptr error;
  std::mutex error_mutex;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    // Indices past a known failure cannot change the answer.
    if (idx > first.load(std::memory_order_relaxed)) continue;
    try {
      if (!ok(idx)) {
        std::size_t cur = first.load();
        while (idx < cur && !first.compare_exchange_weak(cur, idx)) {
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  const std::size_t f = first.load();
  if (f == none) return std::nullopt;
  return f;
}

void for_each_index(Execution exec, std::size_t count, const std::function<void(std::size_t)>& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hyperdet
