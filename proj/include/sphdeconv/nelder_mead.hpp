#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sphdeconv::optim {

struct NelderMeadOptions {
  int max_evaluations = 20000;
  double f_tol = 1e-10;  ///< stop when max f - min f over the simplex is below this
  double x_tol = 1e-9;   ///< ... and every vertex is within x_tol of the best (inf-norm)
  std::vector<double> initial_step;  ///< per-coordinate offsets of the initial simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex with the usual coefficients (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2). Ties are broken by vertex index, so a run
/// is fully determined by the objective values.
NelderMeadResult nelder_mead(const Objective& fn, std::vector<double> x0,
                             const NelderMeadOptions& opt);

}  // namespace sphdeconv::optim
