// Deterministic random-number plumbing: per-replicate streams derived from a
// master seed, so results do not depend on how replicates are scheduled
// across threads.
#pragma once

#include <cstdint>
#include <random>

namespace rsklab {

using Rng = std::mt19937_64;

namespace detail {

/// splitmix64 finalizer; full-period mixing of a 64-bit state.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Seed of replicate `index` under `master`.  Distinct indices give
/// decorrelated streams; the map is fixed forever so campaign outputs stay
/// reproducible.
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index) {
    return detail::mix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

inline Rng make_replicate_rng(std::uint64_t master, std::uint64_t index) {
    return Rng(replicate_seed(master, index));
}

/// Uniform draw on [0, 1) with 53 random bits.  Written out instead of
/// uniform_real_distribution so the stream is bit-identical across standard
/// library implementations.
inline double uniform01(Rng& g) {
    return double(g() >> 11) * 0x1.0p-53;
}

}  // namespace rsklab
