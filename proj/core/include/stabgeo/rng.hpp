#pragma once

#include <cstdint>
#include <cmath>

namespace stabgeo {

/// Counter-based generator: the SplitMix64 stream (Steele/Lea/Flood) evaluated
/// in random-access form.  State after n steps is seed + n*gamma, so draw n is
/// a pure function of (seed, n); disjoint counter ranges give independent,
/// reproducible parallel streams.  Algorithm pinned: SplitMix64, gamma
/// 0x9E3779B97F4A7C15.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + kGamma * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0,1).
  double u01(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on (-pi/2, pi/2).
  double angle(std::uint64_t counter) const {
    return (u01(counter) - 0.5) * 3.14159265358979323846;
  }

  double exponential(std::uint64_t counter) const { return -std::log(u01(counter)); }

  /// Standard normal via Box-Muller; consumes counters c and c+1.
  double normal(std::uint64_t counter) const {
    double r = std::sqrt(2.0 * exponential(counter));
    return r * std::cos(2.0 * 3.14159265358979323846 * u01(counter + 1));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t seed_;
};

}  // namespace stabgeo
