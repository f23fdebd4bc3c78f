#pragma once

#include <cstdint>
#include <random>

namespace rocinf::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `a` (and sub-stream `b`) of a parent seed. Work units
/// seeded this way produce the same numbers whatever order they run in.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (a + 0x632BE59BD9B4E019ULL)) ^
                    (b + 0xD1B54A32D192ED03ULL));
}

using Engine = std::mt19937_64;

inline Engine stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return Engine(derive(seed, a, b));
}

}  // namespace rocinf::rng
