#pragma once

// Model characteristic functions Psi_{f,R}(t) = int exp(i R t.S(u)) f(u) du
// and empirical characteristic functions of a sample, both evaluated on a
// tensor Gauss-Legendre grid over the box [-nu_est, nu_est]^d.
//
// Grid layout: the coordinates are split as t = (t1, t2) with t1 in R and
// t2 in R^{d-1}. Full-grid index = i1 * m^{d-1} + j where j indexes the
// (d-1)-dimensional sub-grid (last coordinate fastest). The two axis slices
// are marg1[i1] = value at (t1, 0) and marg2[j] = value at (0, t2).

#include <cstddef>
#include <span>
#include <vector>

#include "sphdeconv/bessel.hpp"
#include "sphdeconv/geometry.hpp"
#include "sphdeconv/quadrature.hpp"
#include "sphdeconv/sample.hpp"

namespace sphdeconv {

class EvalGrid {
 public:
  static constexpr double kDefaultNuEst = 1.0;
  static constexpr int kDefaultNodes = 33;

  EvalGrid(int dim, double nu_est = kDefaultNuEst, int nodes_per_axis = kDefaultNodes);

  int dim() const { return dim_; }
  int d1() const { return 1; }
  int d2() const { return dim_ - 1; }
  double nu_est() const { return nu_est_; }
  int nodes_per_axis() const { return static_cast<int>(axis_.size()); }
  const quad::Rule1D& axis() const { return axis_; }

  std::size_t full_size() const { return sub_size_ * axis_.size(); }
  std::size_t sub_size() const { return sub_size_; }

  /// Coordinates of the sub-grid node j (d-1 values).
  void sub_node(std::size_t j, std::span<double> t2) const;
  /// Coordinates of the full-grid node idx (d values).
  void full_node(std::size_t idx, std::span<double> t) const;

  /// Product weights of the sub-grid nodes; full weight = axis w[i1] * sub_weights[j].
  const std::vector<double>& sub_weights() const { return sub_weights_; }
  double weight_sum() const;

 private:
  int dim_;
  double nu_est_;
  quad::Rule1D axis_;
  std::size_t sub_size_;
  std::vector<double> sub_weights_;
};

/// Values of a characteristic function on a grid and its two axis slices.
struct GridValues {
  std::vector<cplx> full;
  std::vector<cplx> marg1;
  std::vector<cplx> marg2;
};

/// Empirical characteristic function of a sample on a grid.
struct EcfCache {
  GridValues values;
  std::size_t n = 0;
};

struct PsiOptions {
  /// Gauss-Legendre nodes per angle axis for the quadrature route. With more
  /// than two angle axes the per-axis count is reduced so that the total
  /// never exceeds quad_nodes^2.
  int quad_nodes = 256;
  bessel::BesselEvalConfig bessel{};
};

/// Psi_{f,R}(t). Fourier densities (d = 2) use the Fourier-Bessel expansion
///   Psi(r cos 2 pi th, r sin 2 pi th) = sum_p i^p f_p J_p(r R) e^{-2 i pi p th},
/// which is exact because f_p vanishes beyond the cutoff. Callable densities
/// and d > 2 use tensor Gauss-Legendre quadrature over the angles.
cplx psi_model(const AngleDensity& f, double R, std::span<const double> t,
               const PsiOptions& opt = {});

/// Quadrature route only; also valid for Fourier densities (used as a cross-check).
cplx psi_model_quadrature(const AngleDensity& f, double R, std::span<const double> t,
                          const PsiOptions& opt = {});

/// Batched psi_model at all grid nodes and both axis slices; bit-identical to
/// pointwise psi_model calls.
GridValues psi_model_marginals(const AngleDensity& f, double R, const EvalGrid& grid,
                               const PsiOptions& opt = {});

/// psi_n(t) = (1/n) sum_l exp(i t.Y_l) on the grid.
EcfCache ecf(const Sample& sample, const EvalGrid& grid);

/// Fast repeated evaluation of Psi_{f,R} on a fixed grid for Fourier
/// densities with a fixed cutoff. Produces exactly the values psi_model
/// would; J_p is evaluated once per distinct radius.
class FourierModelEvaluator {
 public:
  FourierModelEvaluator(const EvalGrid& grid, int cutoff, bessel::BesselEvalConfig cfg = {});

  int cutoff() const { return cutoff_; }

  /// coeffs holds c_0..c_K (K = cutoff); c_0 is not assumed to be 1.
  void evaluate(std::span<const cplx> coeffs, double R, GridValues& out) const;

 private:
  struct Node {
    std::size_t radius_index;
    std::size_t trig_offset;  // into cos_/sin_, cutoff_ entries for p = 1..K
  };

  int cutoff_;
  bessel::BesselEvalConfig cfg_;
  std::vector<double> radii_;  // distinct polar radii
  std::vector<double> cos_, sin_;
  std::vector<Node> full_, marg1_, marg2_;
};

}  // namespace sphdeconv
