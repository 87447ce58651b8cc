#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace awl1 {

// Deterministic, splittable randomness. Every consumer derives an
// independent mt19937_64 stream from (master seed, two stream indices),
// so builds are reproducible bit-for-bit and parallelizable without
// shared state. Gaussian and uniform draws are generated with explicit
// bit manipulation instead of std::*_distribution, whose output
// sequences are implementation-defined; an index file written on one
// platform must re-derive identical hash functions on another.

/// SplitMix64 finalizer (Steele et al. constants).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent stream for (seed, a, b), e.g. (master, table, function).
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ (a + 0xc2b2ae3d27d4eb4fULL));
    s = mix64(s ^ (b + 0x165667b19e3779f9ULL));
    return std::mt19937_64{s};
}

/// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal draw via Box-Muller (cosine branch only, two
/// uniforms per draw; stateless, so streams stay splittable).
inline double gaussian(std::mt19937_64& rng) {
    const double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace awl1
