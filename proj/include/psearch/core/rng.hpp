#pragma once

#include <cstdint>
#include <random>

namespace psearch {

/*
  All randomness in generators and the deterministic scheduler goes
  through these helpers on a plain mt19937_64 so byte-identical output
  depends only on the seed, never on a library distribution's sampling
  strategy.
*/

// Uniform integer in [0, bound), bound >= 1; rejection sampled.
inline std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound) {
    if (bound <= 1)
        return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace psearch
