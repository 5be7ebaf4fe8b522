#pragma once

// The empirical contrast
//
//   M_n(f,R) = int_{B x B^{d-1}} | Psi_{f,R}(t1,t2) psi_n(t1,0) psi_n(0,t2)
//                               - psi_n(t1,t2) Psi_{f,R}(t1,0) Psi_{f,R}(0,t2) |^2 dt1 dt2
//
// and its population counterpart M (test oracle only), which replaces psi_n
// by the true Psi_{f*,R*} and weights the integrand by |Phi_eps(t)|^2.

#include <span>
#include <vector>

#include "sphdeconv/charfn.hpp"
#include "sphdeconv/geometry.hpp"
#include "sphdeconv/sample.hpp"
#include "sphdeconv/simulate.hpp"

namespace sphdeconv {

struct ContrastContext {
  EvalGrid grid;
  EcfCache ecf;

  /// Builds the ECF of `sample` on `grid`. M_n is unchanged when every
  /// observation is shifted by the same vector, so with `center` set the ECF
  /// is taken of the mean-centred sample, which keeps the phases small.
  static ContrastContext from_sample(const Sample& sample, const EvalGrid& grid,
                                     bool center = true);
};

/// Quadrature of |model.full * data.marg1 * data.marg2 - data.full * model.marg1 * model.marg2|^2
/// with weights w1[i] * w2[j] (Neumaier-compensated, fixed node order).
double contrast_integral(const GridValues& model, const GridValues& data,
                         std::span<const double> w1, std::span<const double> w2);

double contrast_mn(const AngleDensity& f, double R, const ContrastContext& ctx,
                   const PsiOptions& opt = {});

/// Repeated M_n evaluation for Fourier densities of a fixed cutoff. Returns
/// exactly contrast_mn(AngleDensity::fourier(coeffs), R, ctx).
class FourierContrast {
 public:
  FourierContrast(const ContrastContext& ctx, int cutoff, bessel::BesselEvalConfig cfg = {});
  double operator()(std::span<const cplx> coeffs, double R) const;

 private:
  const ContrastContext* ctx_;
  FourierModelEvaluator model_;
  mutable GridValues scratch_;
};

struct OracleTruth {
  AngleDensity f_star;
  double R_star;
  NoiseModel noise;
};

/// M(f,R) over [-nu, nu]^d. Throws ConfigError when the noise model has no
/// closed-form characteristic function.
double contrast_m_oracle(const AngleDensity& f, double R, const OracleTruth& truth, double nu,
                         int nodes_per_axis = EvalGrid::kDefaultNodes,
                         const PsiOptions& opt = {});

}  // namespace sphdeconv
