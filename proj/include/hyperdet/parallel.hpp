#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace hyperdet {

// Every data-parallel kernel has a serial reference with identical results;
// tests compare the two.
enum class Execution { Serial, Parallel };

int available_threads();

// Smallest index i < count with ok(i) == false, or nullopt. The parallel
// variant evaluates indices out of order but reports the same index as the
// serial scan.
std::optional<std::size_t> first_failure_serial(std::size_t count,
                                                const std::function<bool(std::size_t)>& ok);
std::optional<std::size_t> first_failure_parallel(std::size_t count,
                                                  const std::function<bool(std::size_t)>& ok);

inline std::optional<std::size_t> first_failure(Execution exec, std::size_t count,
                                                const std::function<bool(std::size_t)>& ok) {
  return exec == Execution::Serial ? first_failure_serial(count, ok) : first_failure_parallel(count, ok);
}

// Runs body(i) for i in [0, count).
void for_each_index(Execution exec, std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hyperdet
