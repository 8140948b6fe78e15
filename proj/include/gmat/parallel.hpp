#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef GMAT_HAVE_OPENMP
#include <omp.h>
#endif

namespace gmat {

/// Sets the worker count used by the compute kernels. `0` restores the
/// runtime default.
void set_thread_count(int threads);
int thread_count();

namespace detail {

// Reductions are split into blocks of this fixed size regardless of the thread
// count, and the block partials are summed in index order. That keeps every
// result bit-identical across thread counts.
inline constexpr std::size_t kReduceBlock = std::size_t{1} << 14;

template <class F>
void parallel_for(std::size_t n, F &&body) {
#ifdef GMAT_HAVE_OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        body(static_cast<std::size_t>(i));
    }
#else
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
#endif
}

/// Neumaier-compensated sum of `term(i)` for i in [0, n), deterministic across
/// thread counts.
template <class F>
double blocked_sum(std::size_t n, F &&term) {
    const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> partial(blocks, 0.0);
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t lo = b * kReduceBlock;
        const std::size_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
        double sum = 0.0;
        double comp = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double x = term(i);
            const double t = sum + x;
            if ((sum >= 0 ? sum : -sum) >= (x >= 0 ? x : -x)) {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
        }
        partial[b] = sum + comp;
    });
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

} // namespace detail
} // namespace gmat
