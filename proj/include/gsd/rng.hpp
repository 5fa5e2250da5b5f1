#pragma once

#include <cstdint>

namespace gsd {

// Counter-based generation: the value at stream position i is a pure
// function of (seed, i), so any subrange can be produced in any order or
// on any thread with identical results. The mixer is SplitMix64
// (Steele, Lea & Flood 2014); the increment is the 64-bit golden ratio.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t bits_at(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Uniform in the open interval (0,1), 53-bit resolution.
inline double uniform_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>((bits_at(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

inline bool bernoulli_at(std::uint64_t seed, std::uint64_t index, double p) {
    return uniform_at(seed, index) < p;
}

/// Derives an independent substream seed, e.g. one per hypothesis arm.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

}  // namespace gsd
