#include "sphdeconv/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sphdeconv/error.hpp"

namespace sphdeconv::bessel {

namespace {

void check_argument(double x) {
  if (!(x >= 0.0 && x <= kMaxArgument)) {
    throw RangeError("bessel: argument " + std::to_string(x) + " outside [0, " +
                     std::to_string(kMaxArgument) + "]");
  }
}

void check_order(double order) {
  if (!(order >= 0.0) || !std::isfinite(order)) {
    throw ConfigError("bessel: order must be finite and >= 0 (got " + std::to_string(order) +
                      "); use bessel_j_int for negative integer orders");
  }
}

// sum_m (-1)^m (x/2)^{2m} / (m! Gamma(a+m+1)) * 2^{-a}, i.e. J_a(x) / x^a.
double scaled_series(double a, double x, const BesselEvalConfig& cfg) {
  const double q = 0.25 * x * x;
  double term = std::pow(0.5, a) / gamma_fn(a + 1.0);
  double sum = term;
  const double stop = cfg.abs_tol * 1e-4;
  for (int m = 1; m < cfg.series_terms; ++m) {
    term *= -q / (m * (a + m));
    sum += term;
    if (std::abs(term) <= stop && m > 0.5 * x) break;
  }
  return sum;
}

double series(double a, double x, const BesselEvalConfig& cfg) {
  if (x == 0.0) return a == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double q = half * half;
  double term = (a == 0.0 ? 1.0 : std::pow(half, a)) / gamma_fn(a + 1.0);
  double sum = term;
  const double stop = cfg.abs_tol * 1e-4;
  for (int m = 1; m < cfg.series_terms; ++m) {
    term *= -q / (m * (a + m));
    sum += term;
    if (std::abs(term) <= stop && m > half) break;
  }
  return sum;
}

// Miller's backward recurrence. Returns J_{mu+k}(x) for k = 0..kmax where
// mu in [0, 1). Only used for x > kSeriesLimit.
std::vector<double> miller(double mu, int kmax, double x) {
  const int top = std::max(kmax, static_cast<int>(x)) + 60;
  std::vector<double> v(static_cast<std::size_t>(top) + 2, 0.0);
  v[top] = 1.0;
  for (int k = top; k >= 1; --k) {
    v[k - 1] = (2.0 * (mu + k) / x) * v[k] - v[k + 1];
    if (std::abs(v[k - 1]) > 1e200) {
      for (int j = k - 1; j <= top; ++j) v[j] *= 1e-200;
    }
  }
  // Neumann normalisation: (x/2)^mu = sum_j a_j J_{mu+2j}(x),
  // a_0 = Gamma(mu+1), a_j = (mu+2j) Gamma(mu+j)/j! for j >= 1.
  const double g = gamma_fn(mu + 1.0);
  double norm = g * v[0];
  double b = g;  // Gamma(mu+j)/j! at j = 1
  for (int j = 1; 2 * j <= top; ++j) {
    norm += (mu + 2.0 * j) * b * v[2 * j];
    b *= (mu + j) / (j + 1.0);
  }
  const double scale = std::pow(0.5 * x, mu) / norm;
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) out[k] = v[k] * scale;
  return out;
}

bool is_integer(double a) { return a == std::floor(a); }

}  // namespace

void BesselEvalConfig::validate() const {
  if (series_terms < 1) throw ConfigError("BesselEvalConfig: series_terms must be >= 1");
  if (!(abs_tol >= 0.0)) throw ConfigError("BesselEvalConfig: abs_tol must be >= 0");
}

double gamma_fn(double a) {
  if (!(a > 0.0)) throw ConfigError("gamma_fn: argument must be positive");
  if (is_integer(a) && a <= 171.0) {
    double g = 1.0;
    for (int k = 2; k < static_cast<int>(a); ++k) g *= k;
    return g;
  }
  if (is_integer(a - 0.5) && a <= 171.0) {
    // Gamma(n + 1/2) = sqrt(pi) * prod_{k=1}^{n} (k - 1/2)
    double g = std::sqrt(std::numbers::pi);
    const int n = static_cast<int>(a - 0.5);
    for (int k = 1; k <= n; ++k) g *= (k - 0.5);
    return g;
  }
  return std::tgamma(a);
}

double bessel_j(double order, double x, const BesselEvalConfig& cfg) {
  cfg.validate();
  check_order(order);
  check_argument(x);
  if (x <= kSeriesLimit) return series(order, x, cfg);
  const double n0 = std::floor(order);
  const auto values = miller(order - n0, static_cast<int>(n0), x);
  return values.back();
}

double bessel_j_int(int k, double x, const BesselEvalConfig& cfg) {
  if (k >= 0) return bessel_j(k, x, cfg);
  const double j = bessel_j(-static_cast<double>(k), x, cfg);
  return (k % 2 == 0) ? j : -j;
}

void bessel_j_orders(double x, std::span<double> out, const BesselEvalConfig& cfg) {
  cfg.validate();
  check_argument(x);
  if (out.empty()) return;
  if (x <= kSeriesLimit) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = series(static_cast<double>(k), x, cfg);
    return;
  }
  const auto values = miller(0.0, static_cast<int>(out.size()) - 1, x);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = values[k];
}

double h_func(int d, double x, const BesselEvalConfig& cfg) {
  cfg.validate();
  if (d < 2) throw ConfigError("h_func: dimension must be >= 2");
  check_argument(x);
  const double a = 0.5 * d;
  if (x <= kSeriesLimit) return scaled_series(a, x, cfg);
  return bessel_j(a, x, cfg) / std::pow(x, a);
}

double h_func_derivative(int d, double x, const BesselEvalConfig& cfg) {
  cfg.validate();
  if (d < 2) throw ConfigError("h_func_derivative: dimension must be >= 2");
  check_argument(x);
  const double a = 0.5 * d;
  if (x <= kSeriesLimit) return -x * scaled_series(a + 1.0, x, cfg);
  return -bessel_j(a + 1.0, x, cfg) / std::pow(x, a);
}

std::complex<double> jacobi_anger(double z, double theta, int K, const BesselEvalConfig& cfg) {
  if (K < 1) throw ConfigError("jacobi_anger: K must be >= 1");
  const double az = std::abs(z);
  check_argument(az);
  std::vector<double> j(static_cast<std::size_t>(K) + 1);
  bessel_j_orders(az, j, cfg);
  // J_k(-z) = (-1)^k J_k(z)
  if (z < 0.0) {
    for (int k = 1; k <= K; k += 2) j[k] = -j[k];
  }
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<double> sum = j[0];
  for (int k = 1; k <= K; ++k) {
    const double jk = j[k];
    const double jmk = (k % 2 == 0) ? jk : -jk;  // J_{-k}
    const std::complex<double> ik = kIPow[k % 4];
    const std::complex<double> imk = kIPow[(4 - k % 4) % 4];
    sum += ik * jk * std::polar(1.0, -k * theta);
    sum += imk * jmk * std::polar(1.0, k * theta);
  }
  return sum;
}

}  // namespace sphdeconv::bessel
