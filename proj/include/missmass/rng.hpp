#pragma once

#include <cstdint>
#include <random>

namespace missmass {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used only to derive
// independent seeds; sampling itself goes through std::mt19937_64.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for substream `index` of a run started with `seed`. Depends only on the
// pair, so results do not depend on how work is split across threads.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(derive_seed(seed, index));
}

// 53-bit uniform in [0, 1), independent of the standard library's
// generate_canonical implementation.
inline double uniform01(std::mt19937_64& eng) noexcept {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace missmass
