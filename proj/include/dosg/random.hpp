#pragma once

#include <cstdint>

namespace dosg {

// Counter-based deterministic generator built on the SplitMix64 finalizer.
// Every variate is a pure function of (seed, index, stream), so sampling
// order and thread count cannot change the result.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t stream = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x6A09E667F3BCC909ULL);
    h = splitmix64(h ^ splitmix64(index));
    h = splitmix64(h ^ (stream * 0xD1342543DE82EF95ULL));
    return h;
}

// Uniform on [0, 1), 53-bit resolution.
inline double uniform01(std::uint64_t seed, std::uint64_t index,
                        std::uint64_t stream = 0) {
    return static_cast<double>(counter_hash(seed, index, stream) >> 11) *
           (1.0 / 9007199254740992.0);
}

// Uniform on [-amp, amp].
inline double uniform_symmetric(std::uint64_t seed, std::uint64_t index,
                                std::uint64_t stream, double amp) {
    return (2.0 * uniform01(seed, index, stream) - 1.0) * amp;
}

} // namespace dosg
