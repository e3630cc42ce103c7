#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rotorrec {

// splitmix64 finalizer; used to derive statistically independent sub-seeds
// from (seed, stream tag, index) so chains and shards can run in any order.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
    return mix_seed(mix_seed(seed ^ 0x6a09e667f3bcc909ULL) ^ mix_seed(stream) ^ index * 0x9e3779b97f4a7c15ULL);
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform double in [-1, 1).
inline double uniform_sym(std::mt19937_64& gen) { return 2.0 * uniform01(gen) - 1.0; }

// Standard normal via Box-Muller on portable uniforms.
inline double normal01(std::mt19937_64& gen) {
    double u1 = 0.0;
    do {
        u1 = uniform01(gen);
    } while (u1 <= 0.0);
    const double u2 = uniform01(gen);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace rotorrec
