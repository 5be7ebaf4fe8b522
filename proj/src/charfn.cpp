#include "sphdeconv/charfn.hpp"

#include <cmath>
#include <map>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

// sum_p i^p c_p J_p e^{-i p phi} for conjugate-symmetric c, written with the
// +-p terms paired: c_0 J_0 + 2 sum_{p>=1} i^p J_p (Re c_p cos p phi + Im c_p sin p phi).
cplx fourier_bessel_sum(std::span<const cplx> c, const double* j, const double* cosp,
                        const double* sinp) {
  double re = c[0].real() * j[0];
  double im = c[0].imag() * j[0];
  const std::size_t K = c.size() - 1;
  for (std::size_t p = 1; p <= K; ++p) {
    const double s = 2.0 * j[p] * (c[p].real() * cosp[p - 1] + c[p].imag() * sinp[p - 1]);
    switch (p % 4) {
      case 0: re += s; break;
      case 1: im += s; break;
      case 2: re -= s; break;
      default: im -= s; break;
    }
  }
  return {re, im};
}

void polar_trig(double t1, double t2, int K, double& r, double* cosp, double* sinp) {
  r = std::hypot(t1, t2);
  const double phi = std::atan2(t2, t1);
  for (int p = 1; p <= K; ++p) {
    cosp[p - 1] = std::cos(static_cast<double>(p) * phi);
    sinp[p - 1] = std::sin(static_cast<double>(p) * phi);
  }
}

cplx psi_fourier_point(const AngleDensity& f, double R, std::span<const double> t,
                       const bessel::BesselEvalConfig& cfg) {
  const int K = f.cutoff();
  std::vector<double> cosp(K), sinp(K), j(static_cast<std::size_t>(K) + 1);
  double r = 0.0;
  polar_trig(t[0], t[1], K, r, cosp.data(), sinp.data());
  bessel::bessel_j_orders(r * R, j, cfg);
  return fourier_bessel_sum(f.coeffs(), j.data(), cosp.data(), sinp.data());
}

int quad_nodes_per_axis(int angle_dim, int quad_nodes) {
  if (angle_dim <= 2) return quad_nodes;
  return std::max(2, static_cast<int>(std::floor(
                         std::pow(static_cast<double>(quad_nodes), 2.0 / angle_dim) + 1e-9)));
}

// Pre-tabulated quadrature of int exp(i R t.S(u)) f(u) du.
class QuadratureModel {
 public:
  QuadratureModel(const AngleDensity& f, const PsiOptions& opt) : d_(f.dim()) {
    const int k = f.angle_dim();
    const auto rule = quad::gauss_legendre(quad_nodes_per_axis(k, opt.quad_nodes), 0.0, 1.0);
    std::vector<double> s(d_);
    quad::for_each_tensor_node(rule, k, [&](const std::vector<double>& u, double w) {
      const double fw = w * f.eval_unclipped(u);
      if (fw == 0.0) return;
      sphere_map_into(u, s);
      nodes_.insert(nodes_.end(), s.begin(), s.end());
      fw_.push_back(fw);
    });
  }

  cplx value(double R, std::span<const double> t) const {
    double re = 0.0, im = 0.0;
    const std::size_t q = fw_.size();
    for (std::size_t i = 0; i < q; ++i) {
      const double* s = nodes_.data() + i * d_;
      double dot = 0.0;
      for (int a = 0; a < d_; ++a) dot += t[a] * s[a];
      const double ph = R * dot;
      re += fw_[i] * std::cos(ph);
      im += fw_[i] * std::sin(ph);
    }
    return {re, im};
  }

 private:
  int d_;
  std::vector<double> nodes_;
  std::vector<double> fw_;
};

void check_psi_args(const AngleDensity& f, double R, std::span<const double> t) {
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("psi_model: radius must be positive");
  if (static_cast<int>(t.size()) != f.dim()) throw ConfigError("psi_model: dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------------------
// EvalGrid

EvalGrid::EvalGrid(int dim, double nu_est, int nodes_per_axis)
    : dim_(dim), nu_est_(nu_est) {
  if (dim < 2) throw ConfigError("EvalGrid: dimension must be >= 2");
  if (!(nu_est > 0.0) || !std::isfinite(nu_est)) throw ConfigError("EvalGrid: nu_est must be > 0");
  if (nodes_per_axis < 1) throw ConfigError("EvalGrid: nodes_per_axis must be >= 1");
  axis_ = quad::gauss_legendre(nodes_per_axis, -nu_est, nu_est);
  const std::size_t m = axis_.size();
  sub_size_ = 1;
  for (int a = 1; a < dim; ++a) sub_size_ *= m;
  sub_weights_.assign(sub_size_, 1.0);
  std::vector<double> t2(dim - 1);
  for (std::size_t j = 0; j < sub_size_; ++j) {
    std::size_t rem = j;
    double w = 1.0;
    for (int a = dim - 2; a >= 0; --a) {
      w *= axis_.weights[rem % m];
      rem /= m;
    }
    sub_weights_[j] = w;
  }
}

void EvalGrid::sub_node(std::size_t j, std::span<double> t2) const {
  const std::size_t m = axis_.size();
  for (int a = dim_ - 2; a >= 0; --a) {
    t2[a] = axis_.nodes[j % m];
    j /= m;
  }
}

void EvalGrid::full_node(std::size_t idx, std::span<double> t) const {
  t[0] = axis_.nodes[idx / sub_size_];
  sub_node(idx % sub_size_, t.subspan(1));
}

double EvalGrid::weight_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < axis_.size(); ++i)
    for (std::size_t j = 0; j < sub_size_; ++j) s += axis_.weights[i] * sub_weights_[j];
  return s;
}

// ---------------------------------------------------------------------------
// Model characteristic function

cplx psi_model(const AngleDensity& f, double R, std::span<const double> t, const PsiOptions& opt) {
  check_psi_args(f, R, t);
  if (f.is_fourier()) return psi_fourier_point(f, R, t, opt.bessel);
  return QuadratureModel(f, opt).value(R, t);
}

cplx psi_model_quadrature(const AngleDensity& f, double R, std::span<const double> t,
                          const PsiOptions& opt) {
  check_psi_args(f, R, t);
  return QuadratureModel(f, opt).value(R, t);
}

GridValues psi_model_marginals(const AngleDensity& f, double R, const EvalGrid& grid,
                               const PsiOptions& opt) {
  if (grid.dim() != f.dim()) throw ConfigError("psi_model_marginals: dimension mismatch");
  if (!(R > 0.0) || !std::isfinite(R)) throw ConfigError("psi_model: radius must be positive");
  GridValues out;
  if (f.is_fourier()) {
    FourierModelEvaluator(grid, f.cutoff(), opt.bessel).evaluate(f.coeffs(), R, out);
    return out;
  }
  const QuadratureModel model(f, opt);
  const int d = grid.dim();
  const std::size_t m = grid.axis().size();
  std::vector<double> t(d, 0.0);
  out.full.resize(grid.full_size());
  for (std::size_t idx = 0; idx < grid.full_size(); ++idx) {
    grid.full_node(idx, t);
    out.full[idx] = model.value(R, t);
  }
  out.marg1.resize(m);
  std::fill(t.begin(), t.end(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    t[0] = grid.axis().nodes[i];
    out.marg1[i] = model.value(R, t);
  }
  out.marg2.resize(grid.sub_size());
  t[0] = 0.0;
  for (std::size_t j = 0; j < grid.sub_size(); ++j) {
    grid.sub_node(j, std::span<double>(t).subspan(1));
    out.marg2[j] = model.value(R, t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FourierModelEvaluator

FourierModelEvaluator::FourierModelEvaluator(const EvalGrid& grid, int cutoff,
                                             bessel::BesselEvalConfig cfg)
    : cutoff_(cutoff), cfg_(cfg) {
  if (grid.dim() != 2) throw ConfigError("FourierModelEvaluator: d = 2 only");
  if (cutoff < 0) throw ConfigError("FourierModelEvaluator: negative cutoff");
  std::map<double, std::size_t> radius_index;
  const int K = cutoff_;
  std::vector<double> cosp(K), sinp(K);
  auto add_node = [&](double t1, double t2, std::vector<Node>& into) {
    double r = 0.0;
    polar_trig(t1, t2, K, r, cosp.data(), sinp.data());
    auto [it, inserted] = radius_index.try_emplace(r, radii_.size());
    if (inserted) radii_.push_back(r);
    into.push_back({it->second, cos_.size()});
    cos_.insert(cos_.end(), cosp.begin(), cosp.end());
    sin_.insert(sin_.end(), sinp.begin(), sinp.end());
  };
  const auto& nodes = grid.axis().nodes;
  for (double a : nodes)
    for (double b : nodes) add_node(a, b, full_);
  for (double a : nodes) add_node(a, 0.0, marg1_);
  for (double b : nodes) add_node(0.0, b, marg2_);
}

void FourierModelEvaluator::evaluate(std::span<const cplx> coeffs, double R,
                                     GridValues& out) const {
  if (static_cast<int>(coeffs.size()) != cutoff_ + 1) {
    throw ConfigError("FourierModelEvaluator: coefficient count does not match cutoff");
  }
  const std::size_t stride = static_cast<std::size_t>(cutoff_) + 1;
  std::vector<double> j(radii_.size() * stride);
  for (std::size_t r = 0; r < radii_.size(); ++r) {
    bessel::bessel_j_orders(radii_[r] * R, std::span<double>(j.data() + r * stride, stride), cfg_);
  }
  auto fill = [&](const std::vector<Node>& nodes, std::vector<cplx>& values) {
    values.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& nd = nodes[i];
      values[i] = fourier_bessel_sum(coeffs, j.data() + nd.radius_index * stride,
                                     cos_.data() + nd.trig_offset, sin_.data() + nd.trig_offset);
    }
  };
  fill(full_, out.full);
  fill(marg1_, out.marg1);
  fill(marg2_, out.marg2);
}

// ---------------------------------------------------------------------------
// Empirical characteristic function

EcfCache ecf(const Sample& sample, const EvalGrid& grid) {
  const std::size_t n = sample.size();
  if (n == 0) throw ConfigError("ecf: empty sample");
  if (sample.dim != grid.dim()) throw ConfigError("ecf: sample and grid dimensions differ");
  const int d = grid.dim();
  const std::size_t m = grid.axis().size();
  const std::size_t S = grid.sub_size();
  const auto& nodes = grid.axis().nodes;

  std::vector<double> full_re(m * S, 0.0), full_im(m * S, 0.0);
  std::vector<double> m1_re(m, 0.0), m1_im(m, 0.0), m2_re(S, 0.0), m2_im(S, 0.0);
  std::vector<double> c_re(m * S), c_im(m * S), cm1_re(m), cm1_im(m), cm2_re(S), cm2_im(S);

  std::vector<double> e_re(static_cast<std::size_t>(d) * m), e_im(static_cast<std::size_t>(d) * m);
  std::vector<double> sub_re(S), sub_im(S), tmp_re(S), tmp_im(S);

  constexpr std::size_t kChunk = 4096;
  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t stop = std::min(n, start + kChunk);
    std::fill(c_re.begin(), c_re.end(), 0.0);
    std::fill(c_im.begin(), c_im.end(), 0.0);
    std::fill(cm1_re.begin(), cm1_re.end(), 0.0);
    std::fill(cm1_im.begin(), cm1_im.end(), 0.0);
    std::fill(cm2_re.begin(), cm2_re.end(), 0.0);
    std::fill(cm2_im.begin(), cm2_im.end(), 0.0);
    for (std::size_t l = start; l < stop; ++l) {
      const auto y = sample.row(l);
      for (int a = 0; a < d; ++a) {
        for (std::size_t i = 0; i < m; ++i) {
          const double ph = nodes[i] * y[a];
          e_re[a * m + i] = std::cos(ph);
          e_im[a * m + i] = std::sin(ph);
        }
      }
      // Tensor product over coordinates 2..d gives the sub-grid factor.
      std::size_t len = m;
      std::copy_n(e_re.begin() + m, m, sub_re.begin());
      std::copy_n(e_im.begin() + m, m, sub_im.begin());
      for (int a = 2; a < d; ++a) {
        for (std::size_t p = 0; p < len; ++p)
          for (std::size_t i = 0; i < m; ++i) {
            const double xr = sub_re[p], xi = sub_im[p];
            const double yr = e_re[a * m + i], yi = e_im[a * m + i];
            tmp_re[p * m + i] = xr * yr - xi * yi;
            tmp_im[p * m + i] = xr * yi + xi * yr;
          }
        len *= m;
        std::copy_n(tmp_re.begin(), len, sub_re.begin());
        std::copy_n(tmp_im.begin(), len, sub_im.begin());
      }
      for (std::size_t i = 0; i < m; ++i) {
        const double ar = e_re[i], ai = e_im[i];
        double* fr = c_re.data() + i * S;
        double* fi = c_im.data() + i * S;
        for (std::size_t j = 0; j < S; ++j) {
          fr[j] += ar * sub_re[j] - ai * sub_im[j];
          fi[j] += ar * sub_im[j] + ai * sub_re[j];
        }
        cm1_re[i] += ar;
        cm1_im[i] += ai;
      }
      for (std::size_t j = 0; j < S; ++j) {
        cm2_re[j] += sub_re[j];
        cm2_im[j] += sub_im[j];
      }
    }
    for (std::size_t k = 0; k < m * S; ++k) {
      full_re[k] += c_re[k];
      full_im[k] += c_im[k];
    }
    for (std::size_t i = 0; i < m; ++i) {
      m1_re[i] += cm1_re[i];
      m1_im[i] += cm1_im[i];
    }
    for (std::size_t j = 0; j < S; ++j) {
      m2_re[j] += cm2_re[j];
      m2_im[j] += cm2_im[j];
    }
  }

  const double dn = static_cast<double>(n);
  EcfCache cache;
  cache.n = n;
  cache.values.full.resize(m * S);
  cache.values.marg1.resize(m);
  cache.values.marg2.resize(S);
  for (std::size_t k = 0; k < m * S; ++k) cache.values.full[k] = {full_re[k] / dn, full_im[k] / dn};
  for (std::size_t i = 0; i < m; ++i) cache.values.marg1[i] = {m1_re[i] / dn, m1_im[i] / dn};
  for (std::size_t j = 0; j < S; ++j) cache.values.marg2[j] = {m2_re[j] / dn, m2_im[j] / dn};
  return cache;
}

}  // namespace sphdeconv
