#pragma once

#include <cstdint>
#include <random>

namespace curvebump {

/// splitmix64 finalizer; mixes (seed, a, b) into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Seeded 64-bit generator with platform-independent uniform and normal draws.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open_left() noexcept { return 1.0 - uniform(); }
  /// Uniform integer in [0, bound) by multiply-shift.
  std::uint64_t below(std::uint64_t bound) noexcept;
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace curvebump
