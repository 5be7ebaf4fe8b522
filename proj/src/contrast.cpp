#include "sphdeconv/contrast.hpp"

#include <cmath>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

ContrastContext ContrastContext::from_sample(const Sample& sample, const EvalGrid& grid,
                                             bool center) {
  if (!center) return {grid, sphdeconv::ecf(sample, grid)};
  auto m = sample.mean();
  for (auto& v : m) v = -v;
  return {grid, sphdeconv::ecf(sample.translated(m), grid)};
}

double contrast_integral(const GridValues& model, const GridValues& data,
                         std::span<const double> w1, std::span<const double> w2) {
  const std::size_t m = w1.size();
  const std::size_t S = w2.size();
  if (model.full.size() != m * S || data.full.size() != m * S || model.marg1.size() != m ||
      data.marg1.size() != m || model.marg2.size() != S || data.marg2.size() != S) {
    throw ConfigError("contrast_integral: grid sizes do not match");
  }
  Neumaier acc;
  for (std::size_t i = 0; i < m; ++i) {
    const cplx dm1 = data.marg1[i];
    const cplx mm1 = model.marg1[i];
    for (std::size_t j = 0; j < S; ++j) {
      const std::size_t idx = i * S + j;
      const cplx a = model.full[idx] * dm1 * data.marg2[j];
      const cplx b = data.full[idx] * mm1 * model.marg2[j];
      acc.add(w1[i] * w2[j] * std::norm(a - b));
    }
  }
  return acc.value();
}

double contrast_mn(const AngleDensity& f, double R, const ContrastContext& ctx,
                   const PsiOptions& opt) {
  const GridValues model = psi_model_marginals(f, R, ctx.grid, opt);
  return contrast_integral(model, ctx.ecf.values, ctx.grid.axis().weights,
                           ctx.grid.sub_weights());
}

FourierContrast::FourierContrast(const ContrastContext& ctx, int cutoff,
                                 bessel::BesselEvalConfig cfg)
    : ctx_(&ctx), model_(ctx.grid, cutoff, cfg) {}

double FourierContrast::operator()(std::span<const cplx> coeffs, double R) const {
  model_.evaluate(coeffs, R, scratch_);
  return contrast_integral(scratch_, ctx_->ecf.values, ctx_->grid.axis().weights,
                           ctx_->grid.sub_weights());
}

double contrast_m_oracle(const AngleDensity& f, double R, const OracleTruth& truth, double nu,
                         int nodes_per_axis, const PsiOptions& opt) {
  if (!truth.noise.has_char_fn()) {
    throw ConfigError("contrast_m_oracle: noise model has no closed-form characteristic function");
  }
  if (f.dim() != truth.f_star.dim() || truth.noise.dim() != f.dim()) {
    throw ConfigError("contrast_m_oracle: dimension mismatch");
  }
  const EvalGrid grid(f.dim(), nu, nodes_per_axis);
  const GridValues model = psi_model_marginals(f, R, grid, opt);
  const GridValues truth_values = psi_model_marginals(truth.f_star, truth.R_star, grid, opt);

  // |Phi_eps(t1, t2)|^2 = |phi_1(t1)|^2 * prod_{a>=2} |phi_a(t_a)|^2
  std::vector<double> w1(grid.axis().weights);
  for (std::size_t i = 0; i < w1.size(); ++i) {
    w1[i] *= std::norm(truth.noise.coord_char_fn(0, grid.axis().nodes[i]));
  }
  std::vector<double> w2(grid.sub_weights());
  std::vector<double> t2(grid.d2());
  for (std::size_t j = 0; j < w2.size(); ++j) {
    grid.sub_node(j, t2);
    for (int a = 0; a < grid.d2(); ++a) w2[j] *= std::norm(truth.noise.coord_char_fn(a + 1, t2[a]));
  }
  return contrast_integral(model, truth_values, w1, w2);
}

}  // namespace sphdeconv
