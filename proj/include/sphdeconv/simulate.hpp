#pragma once

// Noise models and data generation Y = C* + R* S(U) + eps, including the four
// circle scenarios used by the benchmark.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sphdeconv/geometry.hpp"
#include "sphdeconv/rng.hpp"
#include "sphdeconv/sample.hpp"

namespace sphdeconv {

/// Product of d independent univariate laws.
class NoiseModel {
 public:
  enum class Kind { None, IsotropicGaussian, DiagonalGaussian, MixtureDiracExp };

  static NoiseModel none(int dim);
  static NoiseModel isotropic_gaussian(int dim, double sigma);
  static NoiseModel diagonal_gaussian(std::vector<double> mean, std::vector<double> sigma);
  /// Each coordinate: point mass at `atom` w.p. 1/2, Exponential with mean
  /// `exp_mean` (rate 1/exp_mean) w.p. 1/2.
  static NoiseModel mixture_dirac_exp(int dim, double atom = -1.0, double exp_mean = 0.12);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(mean_.size()); }
  /// Every kind here has a closed-form characteristic function.
  bool has_char_fn() const { return true; }
  std::string describe() const;

  /// E[exp(i t eps^(axis))].
  cplx coord_char_fn(int axis, double t) const;
  /// prod_a coord_char_fn(a, t_a).
  cplx char_fn(std::span<const double> t) const;
  /// Coordinate means.
  std::vector<double> mean() const;

  void draw(Rng& rng, std::span<double> out) const;

 private:
  Kind kind_ = Kind::None;
  std::vector<double> mean_;   // Gaussian location (zeros otherwise)
  std::vector<double> sigma_;  // Gaussian scale
  double atom_ = -1.0;
  double exp_mean_ = 0.12;
};

struct Scenario {
  int id = 0;
  std::vector<double> C_star;
  double R_star = 3.0;
  AngleDensity density = AngleDensity::uniform(2);
  NoiseModel noise = NoiseModel::none(2);

  int dim() const { return static_cast<int>(C_star.size()); }
  /// Preset 1..4:
  ///  1. U uniform, eps ~ N(0, 0.12^2 I)
  ///  2. U uniform, eps coordinates ~ 1/2 delta_{-1} + 1/2 Exp(rate 1/0.12)
  ///  3. U uniform, eps ~ N(0, I)
  ///  4. U ~ exp(cos 2 pi u)/Z, eps ~ N((-1.6, 2.5), diag(0.2^2, 0.57^2))
  /// All with R* = 3, C* = 0.
  static Scenario preset(int id);
  Scenario without_noise() const;
  /// True when E[eps] = 0, so that the center is identified.
  bool centered_noise() const;
};

/// n draws of the noise vector (row-major n x d), deterministic per seed.
std::vector<double> draw_noise(const NoiseModel& model, std::size_t n, std::uint64_t seed);

/// Y_i = C* + R* S(U_i) + eps_i. Angles and noise use independent streams
/// derived from `seed`; the seed is stored in the sample.
Sample generate(const Scenario& scn, std::size_t n, std::uint64_t seed);

}  // namespace sphdeconv
