#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace graphaug {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent streams from a master seed.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix_seed(mix_seed(mix_seed(master) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return Rng{derive_seed(master, a, b)};
}

// Uniform integer in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
}

// Uniform real in [0, 1).
inline double uniform_unit(Rng& rng) {
  return std::uniform_real_distribution<double>{0.0, 1.0}(rng);
}

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace graphaug
