#pragma once

// Portable randomness. Everything here produces the same stream on every
// platform: the engine is std::mt19937_64 (fully specified by the standard)
// and the distributions below are written out by hand, because the standard
// library's distributions are implementation-defined.
//
// Seed derivation: child_seed(seed, i) = splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)
// where splitmix64 is the finalizer of Steele, Lea & Flood's SplitMix64.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace mislab {

using Seed = std::uint64_t;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic, order-independent seed for the i-th child run.
constexpr Seed child_seed(Seed seed, std::uint64_t i) noexcept {
  return mix64(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
}

class Rng {
 public:
  explicit Rng(Seed seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mislab
