#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ingarch {

/// Engine used throughout; one instance per independent stream.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stream `index` of master seed `seed`: splitmix64(splitmix64(seed) ^ splitmix64(~index)).
/// Replication k and chain c of a run use index k and c respectively, so a replication can be
/// re-run alone and reproduce its draws.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(~index));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(derive_stream_seed(seed, index));
}

/// Uniform on [0, 1) from the top 53 bits; identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform on (0, 1].
inline double uniform_open0(Rng& rng) { return 1.0 - uniform01(rng); }

/// Standard normal by the Marsaglia polar method (second variate discarded).
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

}  // namespace ingarch
