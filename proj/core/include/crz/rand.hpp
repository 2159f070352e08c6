#pragma once

#include <cstdint>
#include <random>

namespace crz::rng {

/// splitmix64 step; the standard constants.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic per-item seed derivation (batch index, degree, start, ...).
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9E3779B97F4A7C15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xD1B54A32D192ED03ULL;
    h ^= splitmix64(s);
    return h;
}

/// Uniform double in [0, 1) built from the top 53 bits, so draws are
/// byte-identical across platforms (mt19937_64 is standard-specified).
inline double canonical(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace crz::rng
