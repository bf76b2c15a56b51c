#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "pcz/errors.hpp"

namespace pcz {

/// Seeded random stream with portable draws.
///
/// Only the engine (mt19937_64) and seed_seq are taken from the standard
/// library; both are fully specified, so a stream produces the same sequence
/// on every conforming implementation. Distributions are implemented here
/// because std::*_distribution output is implementation defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on {0, ..., n-1}; rejection sampling keeps it exactly uniform.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw LogicError("uniform_index: empty range");
    const std::uint64_t span = n;
    const std::uint64_t reject_below = (0 - span) % span;  // 2^64 mod n
    std::uint64_t x = engine_();
    while (x < reject_below) x = engine_();
    return static_cast<std::size_t>(x % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller; consumes exactly two draws.
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pcz
