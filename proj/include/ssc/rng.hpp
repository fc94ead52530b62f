#pragma once

// Counter-style deterministic randomness built on the splitmix64 mixer.
// Every (seed, trial, purpose) triple owns an independent stream, so
// Monte Carlo results do not depend on how trials are partitioned across
// threads.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ssc::rng {

// splitmix64 output mixer (finalizer).
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Initial stream state for (seed, a, b); a is typically the trial index
// and b a small purpose tag (0 = index draw, 1 = noise, 2 = sweep row).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0) noexcept {
  std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ULL);
  s = mix(s ^ (a + 0xBF58476D1CE4E5B9ULL));
  s = mix(s ^ (b + 0x94D049BB133111EBULL));
  return s;
}

class Stream {
 public:
  explicit constexpr Stream(std::uint64_t state) noexcept : s_(state) {}

  constexpr std::uint64_t next() noexcept {
    s_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s_;
    return mix(z);
  }

  // Uniform double in (0, 1]: 53 high bits shifted into the mantissa,
  // offset by one so a following log() is finite.
  double uniform01() noexcept {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Independent standard normal pair (Box-Muller).
  void normal_pair(double& g1, double& g2) noexcept {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    g1 = r * std::cos(t);
    g2 = r * std::sin(t);
  }

  // Uniform integer in [0, n) by 128-bit multiply-high reduction.
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t s_;
};

}  // namespace ssc::rng
