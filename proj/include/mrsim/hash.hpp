#pragma once

#include <cstdint>
#include <initializer_list>

#include "mrsim/types.hpp"

namespace mrsim {

// Counter-based randomness: every draw is a pure function of (seed, counters),
// so simulations replay bit-identically regardless of execution order.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = splitmix64(seed ^ 0x5851f42d4c957f2dULL);
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

/// Uniform draw in [0, bound) from a 64-bit hash (multiply-high reduction).
constexpr std::uint64_t bounded(std::uint64_t hash, std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(hash) * bound) >> 64);
}

/// Uniform double in [0, 1).
constexpr double unit_interval(std::uint64_t hash) noexcept {
    return static_cast<double>(hash >> 11) * 0x1.0p-53;
}

/// Stable hash of an atom sequence, independent of platform std::hash.
std::uint64_t hash_atoms(std::uint64_t seed, const Payload& atoms) noexcept;

}  // namespace mrsim
