#pragma once

#include <cstddef>
#include <cstdint>

namespace gsm {

/// Worker count for parallel loops; 0 restores the OpenMP default.
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [begin, end) with a static partition. Bodies must write only to
/// locations owned by index i; results are then independent of the thread count.
template <class Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body) {
  const auto n = static_cast<std::int64_t>(end - begin);
#pragma omp parallel for schedule(static) if (n > 256)
  for (std::int64_t i = 0; i < n; ++i) body(begin + static_cast<std::size_t>(i));
}

}  // namespace gsm
