#ifndef BMOLAB_RNG_HPP
#define BMOLAB_RNG_HPP

#include <cstdint>

namespace bmolab {

// Counter-based generator: every value is a pure function of (seed, counter),
// so parallel workers can draw disjoint streams without shared state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ (value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2)));
}

/// Derived stream seed for case `index` under a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return hash_combine(master, index);
}

/// Uniform double in [0, 1) from a counter.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64(seed ^ (counter * 0xD1B54A32D192ED03ULL)) >> 11) *
         0x1.0p-53;
}

}  // namespace bmolab

#endif
