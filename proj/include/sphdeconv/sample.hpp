#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sphdeconv {

/// n observations in R^d (row-major) and the seed that produced them.
struct Sample {
  int dim = 2;
  std::vector<double> data;
  std::uint64_t seed = 0;
  int scenario_id = 0;  ///< 0 when the data did not come from a preset

  std::size_t size() const { return dim > 0 ? data.size() / static_cast<std::size_t>(dim) : 0; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }

  std::vector<double> mean() const {
    std::vector<double> m(dim, 0.0);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (int a = 0; a < dim; ++a) m[a] += data[i * dim + a];
    for (auto& v : m) v /= static_cast<double>(n);
    return m;
  }

  /// Every observation shifted by `shift`.
  Sample translated(std::span<const double> shift) const {
    Sample out = *this;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      for (int a = 0; a < dim; ++a) out.data[i * dim + a] += shift[a];
    return out;
  }
};

}  // namespace sphdeconv
