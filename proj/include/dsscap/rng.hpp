#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dsscap {

// mt19937_64 output is pinned by the standard, and these helpers avoid
// std::uniform_int_distribution, whose mapping differs across standard
// libraries. Together they make every seeded run reproducible everywhere.

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t bucket = std::numeric_limits<std::uint64_t>::max() / bound;
  const std::uint64_t limit = bucket * bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x / bucket;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace dsscap
