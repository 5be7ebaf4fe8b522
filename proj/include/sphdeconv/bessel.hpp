#pragma once

// Real-argument Bessel functions of the first kind, plus the derived
// quantities used by the radius analysis (H(x) = J_{d/2}(x) / x^{d/2}) and
// the Jacobi-Anger expansion.
//
// Evaluation uses the ascending power series
//
//   J_a(x) = sum_m (-1)^m (x/2)^(a+2m) / (m! Gamma(a+m+1))
//
// for x <= kSeriesLimit. Above that the series cancels too much in double
// precision and Miller's backward recurrence is used instead, normalised by
// the Neumann sum (x/2)^mu = sum_j (mu+2j) Gamma(mu+j)/j! J_{mu+2j}(x).

#include <complex>
#include <span>

namespace sphdeconv::bessel {

/// Largest argument accepted by every routine in this namespace.
inline constexpr double kMaxArgument = 50.0;

/// Arguments at or below this use the power series.
inline constexpr double kSeriesLimit = 8.0;

struct BesselEvalConfig {
  int series_terms = 40;   ///< truncation level M of the power series
  double abs_tol = 1e-12;  ///< target absolute accuracy

  void validate() const;
};

/// Gamma(a) for a > 0. Integers and half-integers use exact products.
double gamma_fn(double a);

/// J_order(x) for order >= 0 and 0 <= x <= kMaxArgument.
double bessel_j(double order, double x, const BesselEvalConfig& cfg = {});

/// J_k(x) for any integer k, via J_{-k} = (-1)^k J_k.
double bessel_j_int(int k, double x, const BesselEvalConfig& cfg = {});

/// Fills out[k] = J_k(x) for k = 0 .. out.size()-1.
void bessel_j_orders(double x, std::span<double> out, const BesselEvalConfig& cfg = {});

/// H(x) = J_{d/2}(x) / x^{d/2}, continuous at 0 with H(0) = 1/(2^{d/2} Gamma(d/2+1)).
double h_func(int d, double x, const BesselEvalConfig& cfg = {});

/// H'(x) = -J_{d/2+1}(x) / x^{d/2}.
double h_func_derivative(int d, double x, const BesselEvalConfig& cfg = {});

/// Symmetric truncation sum_{|k|<=K} i^k J_k(z) e^{-ik theta}; |z| <= kMaxArgument.
std::complex<double> jacobi_anger(double z, double theta, int K,
                                  const BesselEvalConfig& cfg = {});

}  // namespace sphdeconv::bessel
