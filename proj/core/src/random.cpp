#include "curvebump/random.hpp"

#include <cmath>
#include <numbers>

namespace curvebump {

namespace {

__extension__ typedef unsigned __int128 uint128;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

double Random::uniform() noexcept {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Random::below(std::uint64_t bound) noexcept {
  const uint128 wide = static_cast<uint128>(engine_()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

double Random::normal() noexcept {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform_open_left();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

}  // namespace curvebump
