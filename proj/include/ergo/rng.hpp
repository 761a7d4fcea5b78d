#pragma once

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that seeded runs are bit-reproducible across platforms; the
// standard <random> distributions are implementation-defined and are not.

#include <cstdint>

namespace ergo {

namespace detail {
constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += detail::kSplitMixGamma;
        return detail::splitmix_finalize(state);
    }

    // Uniform in [0, bound) via multiply-shift; bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    double unit() {  // [0, 1) with 53 random bits
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

// k-th output of the stream seeded with `seed`; random access form of the
// sequential generator above, so streams can be evaluated out of order.
inline std::uint64_t stream_value(std::uint64_t seed, std::uint64_t k) {
    return detail::splitmix_finalize(seed + (k + 1) * detail::kSplitMixGamma);
}

inline double stream_unit(std::uint64_t seed, std::uint64_t k) {
    return static_cast<double>(stream_value(seed, k) >> 11) * 0x1.0p-53;
}

}  // namespace ergo
