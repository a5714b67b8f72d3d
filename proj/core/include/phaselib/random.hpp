#pragma once

// Counter-based pseudo-randomness. Every draw is a pure function of
// (seed, stream, counter), so generation order and thread count never change
// the values produced. The mixer is SplitMix64's finalizer:
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   z =  z ^ (z >> 31)
// applied after adding the golden-ratio increment 0x9E3779B97F4A7C15.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace phaselib {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ (mix64(b) + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
}

constexpr std::uint64_t hash3(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) noexcept {
  return hash_combine(hash_combine(a, b), c);
}

/// Maps 64 random bits onto [0, bound) without modulo bias.
constexpr std::uint64_t bounded(std::uint64_t bits, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(bits) * bound) >> 64);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(hash_combine(seed, stream)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter));
  }
  constexpr std::uint64_t uniform_int(std::uint64_t counter,
                                      std::uint64_t bound) const noexcept {
    return bounded(bits(counter), bound);
  }
  double uniform(std::uint64_t counter) const noexcept {
    return unit_double(bits(counter));
  }
  /// Standard normal via Box-Muller on two sub-draws of the same counter.
  double normal(std::uint64_t counter) const noexcept {
    double u1 = unit_double(mix64(bits(counter) ^ 0x1ULL));
    double u2 = unit_double(mix64(bits(counter) ^ 0x2ULL));
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

}  // namespace phaselib
