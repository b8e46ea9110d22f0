// Deterministic pseudo-random generator for the randomized sweeps. Splitmix64
// keeps report output byte-identical for a fixed seed on any platform.

#pragma once

#include <cstdint>

namespace phlo {

/// Default sweep seed: the ASCII bytes of "PHLO".
inline constexpr uint64_t kDefaultSeed = 0x50484C4F;

struct SplitMix64 {
    uint64_t state = kDefaultSeed;

    SplitMix64() = default;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [a, b).
    double uniform(double a = 0.0, double b = 1.0) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    int sign() { return (next() & 1u) ? +1 : -1; }
};

}  // namespace phlo
