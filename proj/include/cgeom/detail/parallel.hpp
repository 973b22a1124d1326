#pragma once

#include <atomic>
#include <optional>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace cgeom::detail {

/// Runs `scan(i)` for every outer index in parallel and returns the result
/// of the smallest index that reported a violation. Indices above the best
/// one found so far are skipped, so the answer matches a serial scan.
template <class T, class Scan>
std::optional<T> first_violation(long count, Scan&& scan) {
  std::vector<std::optional<T>> found(static_cast<std::size_t>(count));
  std::atomic<long> best{count};
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    if (i > best.load(std::memory_order_relaxed)) continue;
    std::optional<T> r = scan(i);
    if (r) {
      found[static_cast<std::size_t>(i)] = std::move(r);
      long cur = best.load(std::memory_order_relaxed);
      while (i < cur && !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
      }
    }
  }
  const long b = best.load();
  if (b == count) return std::nullopt;
  return found[static_cast<std::size_t>(b)];
}

inline int max_threads() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace cgeom::detail
