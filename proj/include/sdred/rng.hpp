#ifndef SDRED_RNG_HPP
#define SDRED_RNG_HPP

#include <cstdint>
#include <random>

namespace sdred {

// Uniform draw from [0, n). Modulo bias is irrelevant at the ranges used
// here, and unlike std::uniform_int_distribution the output stream is
// identical on every implementation.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// Seed for an independent per-iteration stream (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace sdred

#endif
