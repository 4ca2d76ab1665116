// Counter-based random substreams: sample i of a run keyed by (seed, i) gets
// its own generator, so a Monte Carlo pass produces the same draws no matter
// how the sample range is split across workers.
#pragma once

#include <cstdint>
#include <cmath>

namespace netstab {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDULL;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z;
}

// SplitMix64 stream whose initial state is a hash of (seed, stream index).
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t index)
        : state_(mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    // Uniform on [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double next_exponential(double mean) {
        // 1-u is in (0,1], so the log never sees zero.
        return -mean * std::log(1.0 - next_unit());
    }

private:
    std::uint64_t state_;
};

}  // namespace netstab
