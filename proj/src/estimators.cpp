#include "sphdeconv/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sphdeconv/contrast.hpp"
#include "sphdeconv/error.hpp"
#include "sphdeconv/nelder_mead.hpp"
#include "sphdeconv/parallel.hpp"
#include "sphdeconv/rng.hpp"

namespace sphdeconv {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<cplx> symmetric_from_nonneg(std::span<const cplx> half) {
  const std::size_t K = half.size() - 1;
  std::vector<cplx> out(2 * K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    out[K + k] = half[k];
    out[K - k] = std::conj(half[k]);
  }
  return out;
}

double coeff_norm_sq(std::span<const cplx> half) {
  double s = 0.0;
  for (std::size_t k = 1; k < half.size(); ++k) s += std::norm(half[k]);
  return s;
}

// Optimizer state: x = (R, Re c_1, Im c_1, ..., Re c_K, Im c_K).
struct FeasiblePoint {
  double R;
  std::vector<cplx> coeffs;  // c_0..c_K
  double penalty;
};

FeasiblePoint project(std::span<const double> x, const FitConfig& cfg) {
  FeasiblePoint p;
  p.R = std::clamp(x[0], cfg.R_min, cfg.R_max);
  p.penalty = (x[0] - p.R) * (x[0] - p.R);
  p.coeffs.assign(cfg.K + 1, cplx(0.0, 0.0));
  p.coeffs[0] = 1.0;
  for (int k = 1; k <= cfg.K; ++k) p.coeffs[k] = cplx(x[2 * k - 1], x[2 * k]);
  // sum over k != 0 counts each c_k and its conjugate
  const double energy = 2.0 * coeff_norm_sq(p.coeffs);
  if (energy > cfg.coeff_bound) {
    const double scale = std::sqrt(cfg.coeff_bound / energy);
    for (int k = 1; k <= cfg.K; ++k) p.coeffs[k] *= scale;
    const double excess = std::sqrt(energy) - std::sqrt(cfg.coeff_bound);
    p.penalty += excess * excess;
  }
  return p;
}

struct Candidate {
  double R = 0.0;
  std::vector<cplx> coeffs;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int evaluations = 0;
  std::vector<Probe> probes;

  void offer(const FeasiblePoint& p, double v) {
    if (v < value) {
      value = v;
      R = p.R;
      coeffs = p.coeffs;
    }
  }
};

// Smaller value first; within simplex_tol, smaller R, then smaller coefficient norm.
bool preferred(const Candidate& a, const Candidate& b, double tol) {
  if (std::abs(a.value - b.value) > tol) return a.value < b.value;
  if (a.R != b.R) return a.R < b.R;
  return coeff_norm_sq(a.coeffs) < coeff_norm_sq(b.coeffs);
}

void check_common(const Sample& sample, const EvalGrid& grid, const FitConfig& cfg) {
  cfg.validate();
  if (sample.size() == 0) throw ConfigError("estimator: empty sample");
  if (grid.dim() != sample.dim) throw ConfigError("estimator: grid and sample dimensions differ");
  // J_p arguments reach |t| R <= sqrt(d) nu_est R_max
  const double max_arg = std::sqrt(static_cast<double>(grid.dim())) * grid.nu_est() * cfg.R_max;
  if (max_arg > bessel::kMaxArgument) {
    throw ConfigError("estimator: sqrt(d) * nu_est * R_max = " + std::to_string(max_arg) +
                      " exceeds the supported Bessel argument range");
  }
}

EstimateReport base_report(const Sample& sample, const FitConfig& cfg, const EvalGrid& grid,
                           const char* method) {
  EstimateReport r;
  r.method = method;
  r.seed = sample.seed;
  r.n = sample.size();
  r.R_min = cfg.R_min;
  r.R_max = cfg.R_max;
  r.nu_est = grid.nu_est();
  r.nodes_per_axis = grid.nodes_per_axis();
  return r;
}

}  // namespace

int truncation_level(std::size_t n, double alpha) {
  if (n < 3) throw ConfigError("truncation level: n must be >= 3");
  if (!(alpha > 0.0)) throw ConfigError("truncation level: alpha must be > 0");
  const double ln = std::log(static_cast<double>(n));
  return static_cast<int>(std::floor(alpha * ln / std::log(ln)));
}

FitConfig FitConfig::for_sample_size(std::size_t n, double alpha) {
  FitConfig cfg;
  cfg.alpha = alpha;
  cfg.allow_any_alpha = alpha >= 0.5;
  cfg.N_trunc = truncation_level(n, alpha);
  cfg.K = std::max(cfg.N_trunc, 4);
  return cfg;
}

void FitConfig::validate() const {
  if (!(R_min > 0.0 && R_min < R_max)) throw ConfigError("FitConfig: need 0 < R_min < R_max");
  if (!std::isfinite(R_max)) throw ConfigError("FitConfig: R_max must be finite");
  if (K < 0) throw ConfigError("FitConfig: K must be >= 0");
  if (N_trunc < 0 || K < N_trunc) throw ConfigError("FitConfig: need 0 <= N_trunc <= K");
  if (!(alpha > 0.0)) throw ConfigError("FitConfig: alpha must be > 0");
  if (!allow_any_alpha && !(alpha < 0.5)) {
    throw ConfigError("FitConfig: alpha must lie in (0, 1/2) (set allow_any_alpha to override)");
  }
  if (restarts < 1) throw ConfigError("FitConfig: restarts must be >= 1");
  if (max_iters < 1) throw ConfigError("FitConfig: max_iters must be >= 1");
  if (!(simplex_tol >= 0.0)) throw ConfigError("FitConfig: simplex_tol must be >= 0");
  if (!(coeff_bound > 0.0)) throw ConfigError("FitConfig: coefficient bound must be > 0");
  if (threads < 0) throw ConfigError("FitConfig: threads must be >= 0");
}

cplx EstimateReport::coeff(int k) const {
  const int K = cutoff();
  if (k < -K || k > K) return {0.0, 0.0};
  return f_hat_coeffs[static_cast<std::size_t>(K + k)];
}

std::vector<cplx> EstimateReport::nonneg_coeffs() const {
  const int K = cutoff();
  return {f_hat_coeffs.begin() + K, f_hat_coeffs.end()};
}

AngleDensity EstimateReport::density() const {
  return AngleDensity::fourier(nonneg_coeffs(), std::numeric_limits<double>::infinity());
}

std::vector<double> estimate_center(const Sample& sample, double R_hat,
                                    const AngleDensity& f_hat) {
  if (sample.size() == 0) throw ConfigError("estimate_center: empty sample");
  if (f_hat.dim() != sample.dim) throw ConfigError("estimate_center: dimension mismatch");
  auto c = sample.mean();
  const auto b = sphere_barycenter(f_hat);
  for (int a = 0; a < sample.dim; ++a) c[a] -= R_hat * b[a];
  return c;
}

EstimateReport fit_joint(const Sample& sample, const FitConfig& cfg, const EvalGrid& grid) {
  const auto start = Clock::now();
  check_common(sample, grid, cfg);
  if (sample.dim != 2) throw ConfigError("fit_joint: density estimation is implemented for d = 2");
  if (sample.size() < 50) throw ConfigError("fit_joint: need n >= 50");

  const ContrastContext ctx = ContrastContext::from_sample(sample, grid);
  const int K = cfg.K;
  const int dims = 2 * K + 1;
  const double span = cfg.R_max - cfg.R_min;

  // Each restart runs two simplex searches from R0_i: one at the uniform
  // density, one at a seeded perturbation of it; both are then re-started
  // from their own optimum until the value stops improving.
  std::vector<Candidate> results(static_cast<std::size_t>(cfg.restarts));
  parallel_for(results.size(), cfg.threads, [&](std::size_t i) {
    const FourierContrast contrast(ctx, K, bessel::BesselEvalConfig{});
    Candidate& cand = results[i];
    auto objective = [&](std::span<const double> x) {
      const FeasiblePoint p = project(x, cfg);
      const double v = contrast(p.coeffs, p.R);
      if (!std::isfinite(v)) throw NumericalError("fit_joint: non-finite contrast value");
      cand.offer(p, v);
      if (cfg.record_probes) cand.probes.push_back({p.R, p.coeffs, v});
      return v + p.penalty;
    };

    optim::NelderMeadOptions opt;
    opt.max_evaluations = cfg.max_iters;
    opt.f_tol = cfg.simplex_tol;
    opt.x_tol = 1e-9;
    opt.initial_step.assign(dims, 0.05);
    opt.initial_step[0] = 0.5 * span / cfg.restarts;

    const double R0 = cfg.R_min + span * (static_cast<double>(i) + 0.5) / cfg.restarts;
    Rng rng(derive_seed({cfg.seed, 0x5eed, i}));
    for (int variant = 0; variant < 2; ++variant) {
      std::vector<double> x0(dims, 0.0);
      x0[0] = R0;
      if (variant == 1)
        for (int j = 1; j < dims; ++j) x0[j] = 0.1 * (2.0 * rng.uniform() - 1.0);
      double last = std::numeric_limits<double>::infinity();
      for (int cycle = 0; cycle < 4; ++cycle) {
        const auto res = optim::nelder_mead(objective, x0, opt);
        cand.iterations += res.iterations;
        cand.evaluations += res.evaluations;
        if (!(res.fx < last - cfg.simplex_tol)) break;
        last = res.fx;
        x0 = res.x;
        opt.initial_step[0] = 0.05;
      }
      opt.initial_step[0] = 0.5 * span / cfg.restarts;
    }
  });

  // Fixed audit grid: uniform density at 16 equispaced radii.
  Candidate audit;
  {
    const FourierContrast contrast(ctx, K, bessel::BesselEvalConfig{});
    std::vector<cplx> uniform(K + 1, cplx(0.0, 0.0));
    uniform[0] = 1.0;
    for (int j = 0; j < 16; ++j) {
      const double R = j == 15 ? cfg.R_max : cfg.R_min + span * j / 15.0;
      const double v = contrast(uniform, R);
      if (!std::isfinite(v)) throw NumericalError("fit_joint: non-finite contrast value");
      audit.offer({R, uniform, 0.0}, v);
      ++audit.evaluations;
      if (cfg.record_probes) audit.probes.push_back({R, uniform, v});
    }
  }

  const Candidate* best = &audit;
  for (const auto& c : results)
    if (preferred(c, *best, cfg.simplex_tol)) best = &c;

  EstimateReport report = base_report(sample, cfg, grid, "joint");
  report.R_hat = best->R;
  report.f_hat_coeffs = symmetric_from_nonneg(best->coeffs);
  report.contrast_value = best->value;
  for (const auto& c : results) {
    report.iterations += c.iterations;
    report.evaluations += c.evaluations;
  }
  report.evaluations += audit.evaluations;
  if (cfg.record_probes) {
    for (const auto& c : results)
      report.probes.insert(report.probes.end(), c.probes.begin(), c.probes.end());
    report.probes.insert(report.probes.end(), audit.probes.begin(), audit.probes.end());
  }
  report.C_hat = estimate_center(sample, report.R_hat, report.density());
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

EstimateReport fit_radius_known_density(const Sample& sample, const AngleDensity& f_star,
                                        const FitConfig& cfg, const EvalGrid& grid) {
  const auto start = Clock::now();
  check_common(sample, grid, cfg);
  if (f_star.dim() != sample.dim) throw ConfigError("fit_radius_known_density: dimension mismatch");

  const ContrastContext ctx = ContrastContext::from_sample(sample, grid);
  ScanResult res;
  std::vector<Probe> probes;
  auto record = [&](double R, double v) {
    if (cfg.record_probes) probes.push_back({R, {}, v});
    return v;
  };
  if (f_star.is_fourier()) {
    const FourierContrast contrast(ctx, f_star.cutoff());
    const auto coeffs = f_star.coeffs();
    res = scan_then_golden([&](double R) { return record(R, contrast(coeffs, R)); }, cfg.R_min,
                           cfg.R_max);
  } else {
    res = scan_then_golden([&](double R) { return record(R, contrast_mn(f_star, R, ctx)); },
                           cfg.R_min, cfg.R_max);
  }

  EstimateReport report = base_report(sample, cfg, grid, "known_density");
  report.R_hat = res.x;
  report.contrast_value = res.value;
  report.iterations = res.iterations;
  report.evaluations = res.evaluations;
  if (f_star.dim() == 2) {
    const int K = f_star.is_fourier() ? f_star.cutoff() : cfg.K;
    report.f_hat_coeffs = symmetric_from_nonneg(fourier_coefficients(f_star, K));
  } else {
    report.f_hat_coeffs = {cplx(1.0, 0.0)};
  }
  report.probes = std::move(probes);
  report.C_hat = estimate_center(sample, report.R_hat, f_star);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

TruncatedDensity::TruncatedDensity(std::vector<cplx> nonneg_coeffs)
    : coeffs_(std::move(nonneg_coeffs)) {
  if (coeffs_.empty()) throw ConfigError("TruncatedDensity: no coefficients");
}

double TruncatedDensity::operator()(double x) const {
  // 2 Re(c_k e^{-2 i pi k x}) for k >= 1, plus c_0
  double v = coeffs_[0].real();
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    v += 2.0 * (coeffs_[k] * std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) * x)).real();
  }
  return v;
}

double TruncatedDensity::l2_distance_sq(std::span<const cplx> reference_nonneg) const {
  const std::size_t N = coeffs_.size() - 1;
  auto ref = [&](std::size_t k) {
    return k < reference_nonneg.size() ? reference_nonneg[k] : cplx(0.0, 0.0);
  };
  double s = std::norm(coeffs_[0] - ref(0));
  for (std::size_t k = 1; k <= N; ++k) s += 2.0 * std::norm(coeffs_[k] - ref(k));
  for (std::size_t k = N + 1; k < reference_nonneg.size(); ++k) s += 2.0 * std::norm(ref(k));
  return s;
}

TruncatedDensity truncate_density(const EstimateReport& report, std::size_t n, double alpha) {
  if (report.f_hat_coeffs.size() % 2 != 1 || report.f_hat_coeffs.empty()) {
    throw ConfigError("truncate_density: report has no density coefficients");
  }
  const int N = truncation_level(n, alpha);
  if (N > report.cutoff()) {
    throw ConfigError("truncate_density: N = " + std::to_string(N) + " exceeds the cutoff K = " +
                      std::to_string(report.cutoff()));
  }
  auto half = report.nonneg_coeffs();
  half.resize(static_cast<std::size_t>(N) + 1);
  return TruncatedDensity(std::move(half));
}

TruncatedDensity truncate_density(const EstimateReport& report, std::size_t n,
                                  const FitConfig& cfg) {
  return truncate_density(report, n, cfg.alpha);
}

}  // namespace sphdeconv
