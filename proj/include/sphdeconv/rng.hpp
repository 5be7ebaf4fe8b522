#pragma once

// Reproducible random streams.
//
// Engine: std::mt19937_64 (its output sequence is fixed by the standard).
// Seeding: the user seed is passed through splitmix64 before seeding the
// engine. Variates are produced by the transforms below rather than by the
// <random> distributions, whose algorithms are implementation-defined, so a
// seed gives the same numbers on every platform.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace sphdeconv {

/// splitmix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-dependent hash of a list of integers; used to derive per-stream seeds
/// such as (base_seed, scenario, n, replication).
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  /// Standard normal by Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double a = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sphdeconv
