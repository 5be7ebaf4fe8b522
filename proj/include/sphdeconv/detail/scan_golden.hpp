#pragma once

#include <cmath>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

template <class Fn>
ScanResult scan_then_golden(Fn&& fn, double lo, double hi, int scan_points, double x_tol) {
  if (!(lo < hi) || scan_points < 3) throw ConfigError("scan_then_golden: invalid bracket");
  ScanResult best;
  auto grid = [&](int i) {
    return i == scan_points - 1 ? hi : lo + (hi - lo) * i / (scan_points - 1);
  };
  int best_i = 0;
  for (int i = 0; i < scan_points; ++i) {
    const double x = grid(i);
    const double v = fn(x);
    ++best.evaluations;
    if (!std::isfinite(v)) throw NumericalError("scan_then_golden: non-finite objective");
    if (i == 0 || v < best.value) {
      best.x = x;
      best.value = v;
      best_i = i;
    }
  }

  double a = grid(best_i > 0 ? best_i - 1 : 0);
  double b = grid(best_i < scan_points - 1 ? best_i + 1 : scan_points - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  auto probe = [&](double x) {
    const double v = fn(x);
    ++best.evaluations;
    if (!std::isfinite(v)) throw NumericalError("scan_then_golden: non-finite objective");
    if (v < best.value) {
      best.x = x;
      best.value = v;
    }
    return v;
  };
  double fc = probe(c);
  double fd = probe(d);
  while (b - a > x_tol * std::max(1.0, std::abs(best.x)) && best.iterations < 200) {
    ++best.iterations;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = probe(d);
    }
  }
  return best;
}

}  // namespace sphdeconv
