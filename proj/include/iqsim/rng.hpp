#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random number generation. Every sample is a pure function of
// (seed, stream, counter), so per-pixel noise streams can be evaluated in any
// order, by any number of workers, and still reproduce bit-identically.

namespace iqsim::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Collapse (seed, stream) into a single key. Streams identify independent
// noise sources (pixel id, chirp index, I vs Q, frame index).
inline std::uint64_t make_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x6a09e667f3bcc909ULL);
}

inline std::uint64_t bits(std::uint64_t key, std::uint64_t counter) {
    return mix64(key + counter * kGolden);
}

// Uniform in (0, 1]; never returns 0 so log() is safe.
inline double uniform01(std::uint64_t key, std::uint64_t counter) {
    return static_cast<double>((bits(key, counter) >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch). Consumes counters
// 2*counter and 2*counter + 1 internally, so successive integer counters
// give independent samples.
inline double gaussian(std::uint64_t key, std::uint64_t counter) {
    const double u1 = uniform01(key, 2 * counter);
    const double u2 = uniform01(key, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// A keyed stream of standard-normal samples indexed by counter.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream)
        : key_(make_key(seed, stream)) {}

    double operator()(std::uint64_t counter) const { return gaussian(key_, counter); }

private:
    std::uint64_t key_;
};

} // namespace iqsim::rng
