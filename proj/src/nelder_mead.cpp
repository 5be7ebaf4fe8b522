#include "sphdeconv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphdeconv/error.hpp"

namespace sphdeconv::optim {

NelderMeadResult nelder_mead(const Objective& fn, std::vector<double> x0,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0) throw ConfigError("nelder_mead: empty starting point");
  if (opt.initial_step.size() != n) throw ConfigError("nelder_mead: initial_step size mismatch");

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return fn(x);
  };

  std::vector<std::vector<double>> v(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) v[i + 1][i] += opt.initial_step[i];
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(v[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto point = [&](const std::vector<double>& from, double t, std::vector<double>& out) {
    // out = centroid + t * (centroid - from)
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (centroid[k] - from[k]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diam = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diam = std::max(diam, std::abs(v[i][k] - v[best][k]));
    if (fv[worst] - fv[best] <= opt.f_tol && diam <= opt.x_tol) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= opt.max_evaluations) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += v[i][k];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    point(v[worst], 1.0, xr);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      point(v[worst], 2.0, xe);
      const double fe = eval(xe);
      if (fe < fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    point(v[worst], outside ? 0.5 : -0.5, xc);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      v[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) v[i][k] = v[best][k] + 0.5 * (v[i][k] - v[best][k]);
      fv[i] = eval(v[i]);
    }
  }

  const auto it = std::min_element(fv.begin(), fv.end());
  const std::size_t best = static_cast<std::size_t>(it - fv.begin());
  res.x = v[best];
  res.fx = fv[best];
  return res;
}

}  // namespace sphdeconv::optim
