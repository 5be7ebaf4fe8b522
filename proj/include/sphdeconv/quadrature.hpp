#pragma once

#include <vector>

namespace sphdeconv::quad {

/// One-dimensional rule: nodes and weights on an interval.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes are ascending and mirrored
/// exactly about the midpoint (node[n-1-i] - mid == -(node[i] - mid) when a == -b).
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre: `panels` equal sub-intervals of [a, b], each with
/// an `order`-point rule.
Rule1D composite_gauss_legendre(int panels, int order, double a, double b);

}  // namespace sphdeconv::quad

namespace sphdeconv::quad {

/// Calls fn(point, weight) for every node of the `dims`-fold tensor product of
/// `rule`. The last coordinate varies fastest.
template <class Fn>
void for_each_tensor_node(const Rule1D& rule, int dims, Fn&& fn) {
  const std::size_t m = rule.size();
  std::vector<std::size_t> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> point(static_cast<std::size_t>(dims));
  if (m == 0 || dims <= 0) return;
  while (true) {
    double w = 1.0;
    for (int a = 0; a < dims; ++a) {
      point[a] = rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    fn(static_cast<const std::vector<double>&>(point), w);
    int a = dims - 1;
    while (a >= 0 && ++idx[a] == m) {
      idx[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

}  // namespace sphdeconv::quad
