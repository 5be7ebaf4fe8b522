#include "sphdeconv/simulate.hpp"

#include <cmath>
#include <sstream>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

NoiseModel NoiseModel::none(int dim) {
  if (dim < 1) throw ConfigError("NoiseModel: dimension must be >= 1");
  NoiseModel m;
  m.kind_ = Kind::None;
  m.mean_.assign(dim, 0.0);
  m.sigma_.assign(dim, 0.0);
  return m;
}

NoiseModel NoiseModel::isotropic_gaussian(int dim, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("NoiseModel: sigma must be > 0");
  NoiseModel m = none(dim);
  m.kind_ = Kind::IsotropicGaussian;
  m.sigma_.assign(dim, sigma);
  return m;
}

NoiseModel NoiseModel::diagonal_gaussian(std::vector<double> mean, std::vector<double> sigma) {
  if (mean.empty() || mean.size() != sigma.size()) {
    throw ConfigError("NoiseModel: mean and sigma must have the same non-zero length");
  }
  for (double s : sigma)
    if (!(s > 0.0)) throw ConfigError("NoiseModel: sigma must be > 0");
  NoiseModel m;
  m.kind_ = Kind::DiagonalGaussian;
  m.mean_ = std::move(mean);
  m.sigma_ = std::move(sigma);
  return m;
}

NoiseModel NoiseModel::mixture_dirac_exp(int dim, double atom, double exp_mean) {
  if (!(exp_mean > 0.0)) throw ConfigError("NoiseModel: exponential mean must be > 0");
  NoiseModel m = none(dim);
  m.kind_ = Kind::MixtureDiracExp;
  m.atom_ = atom;
  m.exp_mean_ = exp_mean;
  return m;
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::None: os << "none"; break;
    case Kind::IsotropicGaussian: os << "gaussian(sigma=" << sigma_[0] << ")"; break;
    case Kind::DiagonalGaussian: os << "diagonal_gaussian"; break;
    case Kind::MixtureDiracExp:
      os << "mixture(atom=" << atom_ << ",exp_mean=" << exp_mean_ << ")";
      break;
  }
  return os.str();
}

cplx NoiseModel::coord_char_fn(int axis, double t) const {
  switch (kind_) {
    case Kind::None: return {1.0, 0.0};
    case Kind::IsotropicGaussian:
    case Kind::DiagonalGaussian: {
      const double s = sigma_[axis];
      return std::exp(-0.5 * s * s * t * t) * std::polar(1.0, mean_[axis] * t);
    }
    case Kind::MixtureDiracExp:
      // 1/2 e^{i a t} + 1/2 / (1 - i mu t)
      return 0.5 * std::polar(1.0, atom_ * t) + 0.5 / cplx(1.0, -exp_mean_ * t);
  }
  return {1.0, 0.0};
}

cplx NoiseModel::char_fn(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != dim()) throw ConfigError("NoiseModel: dimension mismatch");
  cplx v = 1.0;
  for (int a = 0; a < dim(); ++a) v *= coord_char_fn(a, t[a]);
  return v;
}

std::vector<double> NoiseModel::mean() const {
  if (kind_ == Kind::MixtureDiracExp) {
    return std::vector<double>(dim(), 0.5 * atom_ + 0.5 * exp_mean_);
  }
  return mean_;
}

void NoiseModel::draw(Rng& rng, std::span<double> out) const {
  for (int a = 0; a < dim(); ++a) {
    switch (kind_) {
      case Kind::None: out[a] = 0.0; break;
      case Kind::IsotropicGaussian:
      case Kind::DiagonalGaussian: out[a] = mean_[a] + sigma_[a] * rng.normal(); break;
      case Kind::MixtureDiracExp:
        out[a] = rng.uniform() < 0.5 ? atom_ : rng.exponential(1.0 / exp_mean_);
        break;
    }
  }
}

Scenario Scenario::preset(int id) {
  Scenario s;
  s.id = id;
  s.C_star = {0.0, 0.0};
  s.R_star = 3.0;
  switch (id) {
    case 1:
      s.density = AngleDensity::uniform(2);
      s.noise = NoiseModel::isotropic_gaussian(2, 0.12);
      break;
    case 2:
      s.density = AngleDensity::uniform(2);
      s.noise = NoiseModel::mixture_dirac_exp(2, -1.0, 0.12);
      break;
    case 3:
      s.density = AngleDensity::uniform(2);
      s.noise = NoiseModel::isotropic_gaussian(2, 1.0);
      break;
    case 4:
      s.density = AngleDensity::vonmises_like();
      s.noise = NoiseModel::diagonal_gaussian({-1.6, 2.5}, {0.2, 0.57});
      break;
    default:
      throw ConfigError("unknown scenario id " + std::to_string(id) + " (expected 1-4)");
  }
  return s;
}

Scenario Scenario::without_noise() const {
  Scenario s = *this;
  s.noise = NoiseModel::none(dim());
  return s;
}

bool Scenario::centered_noise() const {
  for (double m : noise.mean())
    if (m != 0.0) return false;
  return true;
}

std::vector<double> draw_noise(const NoiseModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("draw_noise: n must be >= 1");
  const int d = model.dim();
  std::vector<double> out(n * d);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) model.draw(rng, std::span<double>(out.data() + i * d, d));
  return out;
}

Sample generate(const Scenario& scn, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ConfigError("generate: n must be >= 1");
  const int d = scn.dim();
  if (scn.density.dim() != d || scn.noise.dim() != d) {
    throw ConfigError("generate: scenario components have inconsistent dimensions");
  }
  const auto angles = sample_angles(scn.density, n, derive_seed({seed, 1}));
  const auto noise = draw_noise(scn.noise, n, derive_seed({seed, 2}));
  Sample s;
  s.dim = d;
  s.seed = seed;
  s.scenario_id = scn.id;
  s.data.resize(n * d);
  const int k = d - 1;
  std::vector<double> dir(d);
  for (std::size_t i = 0; i < n; ++i) {
    sphere_map_into(std::span<const double>(angles.data() + i * k, k), dir);
    for (int a = 0; a < d; ++a) {
      s.data[i * d + a] = scn.C_star[a] + scn.R_star * dir[a] + noise[i * d + a];
    }
  }
  return s;
}

}  // namespace sphdeconv
