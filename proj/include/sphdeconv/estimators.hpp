#pragma once

// Estimators of the radius, center and angle density:
//  - fit_joint:                 (f^, R^) minimising M_n over Fourier densities x [R_min, R_max]
//  - truncate_density:          T_N f^ with N = floor(alpha log n / log log n)
//  - estimate_center:           C^ = mean(Y) - R^ int S(u) f^(u) du
//  - fit_radius_known_density:  R~ = argmin_R M_n(f*, R)

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sphdeconv/charfn.hpp"
#include "sphdeconv/geometry.hpp"
#include "sphdeconv/sample.hpp"

namespace sphdeconv {

struct FitConfig {
  double R_min = 0.5;
  double R_max = 10.0;
  int K = 4;                  ///< Fourier cutoff of the fitted density
  int N_trunc = 4;            ///< output truncation level
  double alpha = 0.45;        ///< truncation constant, in (0, 1/2) for the Sobolev-rate setting
  int restarts = 8;
  int max_iters = 20000;      ///< objective evaluations per simplex run
  double simplex_tol = 1e-10; ///< on the contrast value
  double coeff_bound = kDefaultCoeffBound;  ///< B_F: sum_{k != 0} |c_k|^2 <= B_F
  int threads = 1;            ///< restart workers (0 = hardware concurrency)
  bool record_probes = false; ///< keep every evaluated (f, R) in the report
  std::uint64_t seed = 0;     ///< drives the perturbed restart points
  bool allow_any_alpha = false;  ///< permit alpha >= 1/2 (the simulation study uses alpha = 1)

  /// N_trunc = floor(alpha log n / log log n), K = max(N_trunc, 4).
  static FitConfig for_sample_size(std::size_t n, double alpha = 1.0);
  void validate() const;
};

/// floor(alpha log n / log log n); requires n >= 3.
int truncation_level(std::size_t n, double alpha);

struct Probe {
  double R = 0.0;
  std::vector<cplx> coeffs;  ///< c_0..c_K
  double value = 0.0;
};

struct EstimateReport {
  std::string method;  ///< "joint" or "known_density"
  double R_hat = 0.0;
  std::vector<double> C_hat;
  std::vector<cplx> f_hat_coeffs;  ///< c_{-K}..c_K
  double contrast_value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double R_min = 0.0;
  double R_max = 0.0;
  double nu_est = 0.0;
  int nodes_per_axis = 0;
  std::vector<Probe> probes;

  int cutoff() const { return static_cast<int>(f_hat_coeffs.size() / 2); }
  cplx coeff(int k) const;
  /// c_0..c_K.
  std::vector<cplx> nonneg_coeffs() const;
  /// f^ as a Fourier density (no coefficient bound applied).
  AngleDensity density() const;
};

EstimateReport fit_joint(const Sample& sample, const FitConfig& cfg, const EvalGrid& grid);

EstimateReport fit_radius_known_density(const Sample& sample, const AngleDensity& f_star,
                                        const FitConfig& cfg, const EvalGrid& grid);

std::vector<double> estimate_center(const Sample& sample, double R_hat, const AngleDensity& f_hat);

/// Trigonometric polynomial T_N f^(x) = sum_{|k|<=N} f^_k e^{-2 i pi k x} on (0, 1).
class TruncatedDensity {
 public:
  TruncatedDensity(std::vector<cplx> nonneg_coeffs);

  int level() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  double operator()(double x) const;

  /// int_0^1 (T_N f^ - g)^2 by Parseval, for g with coefficients g_0..g_M:
  /// sum_{|k|<=N} |f^_k - g_k|^2 + sum_{|k|>N} |g_k|^2.
  double l2_distance_sq(std::span<const cplx> reference_nonneg) const;

 private:
  std::vector<cplx> coeffs_;
};

/// Throws ConfigError when N(n, alpha) exceeds the report's cutoff.
TruncatedDensity truncate_density(const EstimateReport& report, std::size_t n, double alpha);
TruncatedDensity truncate_density(const EstimateReport& report, std::size_t n,
                                  const FitConfig& cfg);

/// Radius grid and the scan/golden-section search used by
/// fit_radius_known_density: `scan_points` equispaced values on [lo, hi],
/// leftmost minimum, then golden-section refinement between its neighbours
/// accepting only strict improvements.
struct ScanResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};
template <class Fn>
ScanResult scan_then_golden(Fn&& fn, double lo, double hi, int scan_points = 64,
                            double x_tol = 1e-10);

}  // namespace sphdeconv

#include "sphdeconv/detail/scan_golden.hpp"
