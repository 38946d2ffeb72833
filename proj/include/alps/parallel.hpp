#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alps {

/// How replica-style loops are executed. Both policies produce identical
/// results: every replica owns its RNG stream and its output slot, and the
/// reduction over slots is always done serially afterwards.
enum class Execution { Serial, Parallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

/// Calls body(i) for i in [0, n).
template <class Body>
void for_each_index(std::size_t n, Execution policy, Body&& body) {
  if (policy == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

}  // namespace alps
