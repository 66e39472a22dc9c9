#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace tms::detail {

// Runs body(i) for i in [0, count) across OpenMP threads. Exceptions cannot
// cross the parallel region, so each index records its own and the one with
// the lowest index is rethrown afterwards; the outcome does not depend on
// scheduling.
template <typename Body>
void parallel_for(std::ptrdiff_t count, Body&& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tms::detail
