#pragma once

#include <cstdint>

namespace perc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: a pure function of (key, counter), so trials can
/// be evaluated independently at any parallelism level with identical output.
struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t ctr = 0;

  explicit CounterRng(std::uint64_t k) : key(k) {}

  std::uint64_t next_u64() { return splitmix64(key ^ splitmix64(++ctr)); }

  /// Uniform in [0, 1) with 53 mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }
};

/// Derives the key for one trial of an experiment stream.
inline std::uint64_t derive_key(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
  return splitmix64(splitmix64(master ^ 0xA5A5A5A55A5A5A5AULL) ^ splitmix64(stream * 0x9E3779B97F4A7C15ULL + trial));
}

}  // namespace perc
