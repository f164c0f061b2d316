#pragma once

#include <cstddef>
#include <vector>

#ifdef CHIRAL_HAVE_OPENMP
#include <omp.h>
#endif

namespace chiral {

// Execution policy for the term-expansion kernels. Exact rational arithmetic
// makes every merge order give identical results, so the parallel path is
// bit-identical to the serial reference.
struct Exec {
    bool parallel = false;
    static Exec serial() { return {false}; }
    static Exec par() { return {true}; }
};

#ifdef CHIRAL_HAVE_OPENMP
inline bool parallel_available() { return true; }
#else
inline bool parallel_available() { return false; }
#endif

// Run fn(i) for i in [0, n); each call must touch only its own slot.
template <class Fn>
void parallel_for(const Exec& exec, size_t n, Fn&& fn) {
#ifdef CHIRAL_HAVE_OPENMP
    if (exec.parallel && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) fn(static_cast<size_t>(i));
        return;
    }
#endif
    (void)exec;
    for (size_t i = 0; i < n; ++i) fn(i);
}

// Map [0, n) through fn producing per-index results, then fold in index order.
// Result must be a default-constructible type with operator+=.
template <class Result, class Fn>
Result parallel_map_reduce(const Exec& exec, size_t n, Fn&& fn) {
    Result total{};
#ifdef CHIRAL_HAVE_OPENMP
    if (exec.parallel && n > 1) {
        std::vector<Result> partial(n);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) partial[i] = fn(static_cast<size_t>(i));
        for (size_t i = 0; i < n; ++i) total += partial[i];
        return total;
    }
#endif
    (void)exec;
    for (size_t i = 0; i < n; ++i) total += fn(i);
    return total;
}

}  // namespace chiral
