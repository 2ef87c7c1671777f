#pragma once

#include <cstdint>
#include <random>

namespace util {

/// splitmix64; used to derive independent per-trial seeds from (base, index).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trialSeed(std::uint64_t base, std::uint64_t trial) {
    return splitmix64(base ^ splitmix64(trial + 1));
}

inline std::mt19937_64 makeRng(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

inline double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline int uniformInt(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace util
