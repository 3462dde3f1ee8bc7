#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aid {

/// Effective worker count: 0 means "all hardware threads".
int resolve_workers(int workers);

/**
 * Runs fn(i) for every i in [0, n). workers <= 1 takes the serial reference
 * path; anything else distributes the iterations over an OpenMP pool.
 * Bodies must write only to their own slot so the result is identical on
 * every schedule -- the benchmark and the determinism tests compare the two
 * paths directly.
 */
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    const int w = resolve_workers(workers);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(w)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

}  // namespace aid
