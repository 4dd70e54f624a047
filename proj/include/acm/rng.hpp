#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace acm {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of an independent substream keyed by (seed, ids...).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t h = mix64(seed);
    for (std::uint64_t id : ids) h = mix64(h ^ mix64(id + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> ids = {}) {
    return Rng(derive_seed(seed, ids));
}

/// Uniform double in [0, 1) from exactly one engine draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform index in [0, n) from exactly one engine draw.
inline int uniform_index(Rng& rng, int n) {
    return static_cast<int>(uniform01(rng) * static_cast<double>(n));
}

/// Beta(a, b) variate via two gamma draws, kept inside the open unit interval.
inline double beta_draw(Rng& rng, double a, double b) {
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    const double s = x + y;
    if (!(s > 0.0)) return a >= b ? 1.0 - 0x1.0p-53 : 0x1.0p-53;
    return std::clamp(x / s, 0x1.0p-53, 1.0 - 0x1.0p-53);
}

}  // namespace acm
