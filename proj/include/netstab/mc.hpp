// Deterministic Monte Carlo driver. Samples are processed in fixed-size
// blocks; each block owns a partial accumulator and the partials are merged
// in block order, so the result is bit-identical for any OpenMP thread count.
// A plain serial loop is kept as the reference implementation for tests and
// the benchmark target.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "netstab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace netstab {

inline constexpr std::uint64_t kMcBlockSize = 16384;

// Body signature: void(std::uint64_t sample_index, Substream&, Partial&).
// Partial must be default-constructible and provide merge(const Partial&).
template <typename Partial, typename Body>
Partial mc_run_blocked(std::uint64_t samples, std::uint64_t seed, Body&& body,
                       bool parallel = true) {
    const std::uint64_t nblocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<Partial> partials(nblocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && nblocks > 1)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        Partial& p = partials[static_cast<std::size_t>(b)];
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * kMcBlockSize;
        const std::uint64_t hi = std::min(samples, lo + kMcBlockSize);
        for (std::uint64_t i = lo; i < hi; ++i) {
            Substream stream(seed, i);
            body(i, stream, p);
        }
    }
    Partial total;
    for (const Partial& p : partials) total.merge(p);
    return total;
}

// Serial reference: one accumulator, samples visited in order.
template <typename Partial, typename Body>
Partial mc_run_serial(std::uint64_t samples, std::uint64_t seed, Body&& body) {
    Partial total;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Substream stream(seed, i);
        body(i, stream, total);
    }
    return total;
}

inline int mc_max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace netstab
