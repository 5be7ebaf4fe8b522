#include "sphdeconv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphdeconv/error.hpp"
#include "sphdeconv/quadrature.hpp"
#include "sphdeconv/rng.hpp"

namespace sphdeconv {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-axis node count for ~10^4 total nodes on [0,1]^k.
quad::Rule1D normalisation_rule(int k) {
  const int per_axis = static_cast<int>(std::ceil(std::pow(1e4, 1.0 / k)));
  const int panels = std::max(1, (per_axis + 3) / 4);
  return quad::composite_gauss_legendre(panels, 4, 0.0, 1.0);
}

double integrate_unit_cube(int k, const std::function<double(std::span<const double>)>& fn) {
  const auto rule = normalisation_rule(k);
  double total = 0.0;
  quad::for_each_tensor_node(rule, k, [&](const std::vector<double>& p, double w) {
    total += w * fn(p);
  });
  return total;
}

void check_unit_cube(std::span<const double> u) {
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("angle coordinate outside [0, 1]");
  }
}

}  // namespace

void sphere_map_into(std::span<const double> u, std::span<double> out) {
  if (u.empty() || out.size() != u.size() + 1) {
    throw ConfigError("sphere_map: output must have u.size() + 1 entries");
  }
  const std::size_t d = out.size();
  double prod = std::sin(kTwoPi * u[0]);
  out[0] = std::cos(kTwoPi * u[0]);
  for (std::size_t j = 1; j + 1 < d; ++j) {
    out[j] = prod * std::cos(std::numbers::pi * u[j]);
    prod *= std::sin(std::numbers::pi * u[j]);
  }
  out[d - 1] = prod;
}

std::vector<double> sphere_map(std::span<const double> u) {
  check_unit_cube(u);
  std::vector<double> out(u.size() + 1);
  sphere_map_into(u, out);
  return out;
}

AngleDensity AngleDensity::fourier(std::vector<cplx> nonneg_coeffs, double bound) {
  if (nonneg_coeffs.empty() || nonneg_coeffs[0] != cplx(1.0, 0.0)) {
    throw ConfigError("Fourier density: c_0 must equal 1");
  }
  for (const auto& c : nonneg_coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ConfigError("Fourier density: non-finite coefficient");
    }
  }
  AngleDensity f;
  f.dim_ = 2;
  f.coeffs_ = std::move(nonneg_coeffs);
  if (f.coefficient_energy() > bound) {
    throw ConfigError("Fourier density: coefficient energy exceeds bound " + std::to_string(bound));
  }
  return f;
}

AngleDensity AngleDensity::fourier_symmetric(std::span<const cplx> coeffs, double bound) {
  if (coeffs.size() % 2 != 1) throw ConfigError("Fourier density: need 2K+1 coefficients");
  const std::size_t K = coeffs.size() / 2;
  std::vector<cplx> half(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    const cplx pos = coeffs[K + k];
    const cplx neg = coeffs[K - k];
    if (std::abs(neg - std::conj(pos)) > 1e-12) {
      throw ConfigError("Fourier density: coefficients are not conjugate symmetric");
    }
    half[k] = pos;
  }
  return fourier(std::move(half), bound);
}

AngleDensity AngleDensity::callable(int dim, DensityFn density, std::string name) {
  if (dim < 2) throw ConfigError("AngleDensity: dimension must be >= 2");
  if (!density) throw ConfigError("AngleDensity: empty density function");
  const double mass = integrate_unit_cube(dim - 1, density);
  if (!(std::abs(mass - 1.0) <= 1e-6)) {
    throw ConfigError("AngleDensity '" + name + "' integrates to " + std::to_string(mass) +
                      ", not 1");
  }
  AngleDensity f;
  f.dim_ = dim;
  f.density_ = std::make_shared<const DensityFn>(std::move(density));
  f.name_ = std::move(name);
  return f;
}

AngleDensity AngleDensity::uniform(int dim) {
  if (dim == 2) {
    AngleDensity f = fourier({cplx(1.0, 0.0)});
    f.name_ = "uniform";
    return f;
  }
  return callable(dim, [](std::span<const double>) { return 1.0; }, "uniform");
}

AngleDensity AngleDensity::vonmises_like() {
  // Periodic analytic integrand: the trapezoid rule is spectrally accurate.
  constexpr int kNodes = 1024;
  double z = 0.0;
  for (int i = 0; i < kNodes; ++i) z += std::exp(std::cos(kTwoPi * i / kNodes));
  z /= kNodes;
  return callable(
      2, [z](std::span<const double> u) { return std::exp(std::cos(kTwoPi * u[0])) / z; },
      "vonmises_like");
}

AngleDensity AngleDensity::named(const std::string& name, int dim) {
  if (name == "uniform") return uniform(dim);
  if (name == "vonmises_like") {
    if (dim != 2) throw ConfigError("vonmises_like is defined for d = 2 only");
    return vonmises_like();
  }
  throw ConfigError("unknown density name '" + name + "'");
}

cplx AngleDensity::coeff(int k) const {
  const int ak = std::abs(k);
  if (ak > cutoff()) return {0.0, 0.0};
  return k >= 0 ? coeffs_[ak] : std::conj(coeffs_[ak]);
}

double AngleDensity::coefficient_energy() const {
  double e = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) e += 2.0 * std::norm(coeffs_[k]);
  return e;
}

double AngleDensity::eval_unclipped(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != angle_dim()) throw ConfigError("density: dimension mismatch");
  if (density_) return (*density_)(u);
  // Re(c_k e^{-i k x} + conj(c_k) e^{i k x}) = 2 (Re c_k cos kx + Im c_k sin kx)
  const double x = kTwoPi * u[0];
  double v = coeffs_[0].real();
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    const double kx = static_cast<double>(k) * x;
    v += 2.0 * (coeffs_[k].real() * std::cos(kx) + coeffs_[k].imag() * std::sin(kx));
  }
  return v;
}

double AngleDensity::eval(std::span<const double> u) const {
  return std::max(0.0, eval_unclipped(u));
}

std::vector<double> sample_angles(const AngleDensity& f, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("sample_angles: n must be >= 1");
  const int k = f.angle_dim();

  // Envelope bound from a ~2^10-node grid (endpoints included), with 1% slack.
  const int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(1024.0, 1.0 / k))));
  quad::Rule1D grid;
  for (int i = 0; i < per_axis; ++i) {
    grid.nodes.push_back(static_cast<double>(i) / (per_axis - 1));
    grid.weights.push_back(1.0);
  }
  double sup = 0.0;
  quad::for_each_tensor_node(grid, k, [&](const std::vector<double>& p, double) {
    sup = std::max(sup, f.eval(p));
  });
  if (!(sup > 0.0) || !std::isfinite(sup)) throw ConfigError("sample_angles: density has no mass");
  sup *= 1.01;

  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n * k);
  std::vector<double> u(k);
  std::size_t accepted = 0;
  while (accepted < n) {
    for (int a = 0; a < k; ++a) u[a] = rng.uniform();
    if (rng.uniform() * sup <= f.eval(u)) {
      out.insert(out.end(), u.begin(), u.end());
      ++accepted;
    }
  }
  return out;
}

std::vector<cplx> fourier_coefficients(const AngleDensity& f, int K) {
  if (f.dim() != 2) throw ConfigError("fourier_coefficients: d = 2 only");
  if (K < 0) throw ConfigError("fourier_coefficients: K must be >= 0");
  std::vector<cplx> c(static_cast<std::size_t>(K) + 1);
  if (f.is_fourier()) {
    for (int k = 0; k <= K; ++k) c[k] = f.coeff(k);
    return c;
  }
  constexpr int kNodes = 4096;
  std::vector<double> vals(kNodes);
  for (int i = 0; i < kNodes; ++i) vals[i] = f.eval(static_cast<double>(i) / kNodes);
  for (int k = 0; k <= K; ++k) {
    cplx s = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      s += vals[i] * std::polar(1.0, kTwoPi * k * static_cast<double>(i) / kNodes);
    }
    c[k] = s / static_cast<double>(kNodes);
  }
  return c;
}

std::vector<double> sphere_barycenter(const AngleDensity& f) {
  const int d = f.dim();
  if (f.is_fourier()) {
    const cplx c1 = f.coeff(1);
    return {c1.real(), c1.imag()};
  }
  const int k = d - 1;
  const int per_axis = k == 1 ? 256 : 64;
  const auto rule = quad::gauss_legendre(per_axis, 0.0, 1.0);
  std::vector<double> bary(d, 0.0), s(d);
  quad::for_each_tensor_node(rule, k, [&](const std::vector<double>& p, double w) {
    sphere_map_into(p, s);
    const double fw = w * f.eval(p);
    for (int j = 0; j < d; ++j) bary[j] += fw * s[j];
  });
  return bary;
}

}  // namespace sphdeconv
