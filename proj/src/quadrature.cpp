#include "sphdeconv/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "sphdeconv/error.hpp"

namespace sphdeconv::quad {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  if (!(b > a)) throw ConfigError("gauss_legendre: empty interval");

  // Reference nodes on [-1, 1] by Newton iteration on P_n.
  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double halfw = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = mid + halfw * x[i];
    rule.weights[i] = halfw * w[i];
  }
  // Symmetric boxes keep exact mirror symmetry of the nodes.
  if (mid == 0.0) {
    for (int i = 0; i < half; ++i) rule.nodes[n - 1 - i] = -rule.nodes[i];
  }
  return rule;
}

Rule1D composite_gauss_legendre(int panels, int order, double a, double b) {
  if (panels < 1) throw ConfigError("composite_gauss_legendre: need at least one panel");
  const Rule1D ref = gauss_legendre(order);
  Rule1D rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
  rule.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + 0.5 * h * ref.nodes[i]);
      rule.weights.push_back(0.5 * h * ref.weights[i]);
    }
  }
  return rule;
}

}  // namespace sphdeconv::quad
