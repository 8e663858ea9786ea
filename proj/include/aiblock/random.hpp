#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace aiblock {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream identified by (master, tags...). Streams
/// depend only on the tags, never on thread count or evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
    return h;
}

/// Uniform on the open interval (0, 1) with 53 random bits.
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

inline double standard_gamma(double shape, Rng& rng) {
    if (shape == 1.0) return standard_exponential(rng);
    std::gamma_distribution<double> gamma(shape, 1.0);
    return gamma(rng);
}

}  // namespace aiblock
