#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

namespace heis {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent generator for work item `index` of a run seeded with `seed`.
// Streams depend only on (seed, index), never on thread scheduling.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

// Platform-independent uniform double in [0,1); std::uniform_real_distribution
// is implementation-defined.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// uniform integer in [0, n), n > 0; rejection keeps it unbiased
inline std::uint64_t uniform_index(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

// k distinct indices from [0, n), sorted (Floyd).
inline std::vector<std::uint64_t> sample_indices(std::mt19937_64& g, std::uint64_t n, std::uint64_t k) {
  std::unordered_set<std::uint64_t> picked;
  picked.reserve(static_cast<std::size_t>(k) * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t r = uniform_index(g, j + 1);
    if (!picked.insert(r).second) picked.insert(j);
  }
  std::vector<std::uint64_t> out(picked.begin(), picked.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace heis
