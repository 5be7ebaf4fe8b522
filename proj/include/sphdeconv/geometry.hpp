#pragma once

// Spherical parametrisation S(u) and densities of the angle vector u.

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sphdeconv {

using cplx = std::complex<double>;

/// Default bound B_F on sum_{k != 0} |c_k|^2 for Fourier densities.
inline constexpr double kDefaultCoeffBound = 10.0;

/// Writes S(u) into `out` (size u.size() + 1):
///   S_1 = cos(2 pi u1)
///   S_j = sin(2 pi u1) sin(pi u2) ... sin(pi u_{j-1}) cos(pi u_j),  1 < j < d
///   S_d = sin(2 pi u1) sin(pi u2) ... sin(pi u_{d-1})
void sphere_map_into(std::span<const double> u, std::span<double> out);
std::vector<double> sphere_map(std::span<const double> u);

struct SphereModel {
  std::vector<double> center;
  double radius = 1.0;

  int dim() const { return static_cast<int>(center.size()); }
};

/// Density of the angle vector u on [0,1]^{d-1}.
///
/// Two representations:
///  - Fourier (d = 2 only): f(u) = sum_{|k|<=K} c_k e^{-2 i pi k u} with
///    c_0 = 1 and c_{-k} = conj(c_k). Only c_0..c_K are stored.
///  - Callable: an arbitrary normalised density on [0,1]^{d-1}.
class AngleDensity {
 public:
  using DensityFn = std::function<double(std::span<const double>)>;

  /// Coefficients c_0..c_K. Throws ConfigError unless c_0 == 1, c_0 is real
  /// and the energy sum_{k != 0} |c_k|^2 is at most `bound`.
  static AngleDensity fourier(std::vector<cplx> nonneg_coeffs,
                              double bound = kDefaultCoeffBound);
  /// Coefficients c_{-K}..c_K; conjugate symmetry is checked to 1e-12.
  static AngleDensity fourier_symmetric(std::span<const cplx> coeffs,
                                        double bound = kDefaultCoeffBound);
  /// Throws ConfigError if the density does not integrate to 1 within 1e-6.
  static AngleDensity callable(int dim, DensityFn density, std::string name = "callable");

  static AngleDensity uniform(int dim = 2);
  /// u -> exp(cos 2 pi u) / int_0^1 exp(cos 2 pi v) dv on [0, 1].
  static AngleDensity vonmises_like();
  /// "uniform" or "vonmises_like".
  static AngleDensity named(const std::string& name, int dim = 2);

  int dim() const { return dim_; }
  int angle_dim() const { return dim_ - 1; }
  bool is_fourier() const { return !density_; }
  int cutoff() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  /// c_k for any integer k (zero beyond the cutoff).
  cplx coeff(int k) const;
  double coefficient_energy() const;
  /// Non-empty for densities built by name; used by serialisation.
  const std::string& name() const { return name_; }

  /// Fourier: Re(sum c_k e^{-2 i pi k u}) clipped at zero; Callable: density(u).
  double eval(std::span<const double> u) const;
  double eval(double u) const { return eval(std::span<const double>(&u, 1)); }
  /// Fourier: the trigonometric polynomial without clipping.
  double eval_unclipped(std::span<const double> u) const;
  double eval_unclipped(double u) const { return eval_unclipped(std::span<const double>(&u, 1)); }

 private:
  AngleDensity() = default;

  int dim_ = 2;
  std::vector<cplx> coeffs_;  // fourier only
  std::shared_ptr<const DensityFn> density_;
  std::string name_;
};

/// n i.i.d. draws from f by rejection against the uniform envelope. The
/// result is row-major with f.angle_dim() values per draw.
std::vector<double> sample_angles(const AngleDensity& f, std::size_t n, std::uint64_t seed);

/// Fourier coefficients f_k = int_0^1 f(u) e^{2 i pi k u} du, k = 0..K, of a
/// d = 2 density. Exact for Fourier densities, 4096-node trapezoid otherwise.
std::vector<cplx> fourier_coefficients(const AngleDensity& f, int K);

/// int S(u) f(u) du. For d = 2 this is (Re f_1, Im f_1).
std::vector<double> sphere_barycenter(const AngleDensity& f);

}  // namespace sphdeconv
