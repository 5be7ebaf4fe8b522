#include <gtest/gtest.h>

#include <cmath>

#include "sphdeconv/error.hpp"
#include "sphdeconv/simulate.hpp"

using namespace sphdeconv;

namespace {

struct Moments {
  double mean[2] = {0, 0};
  double cov[2][2] = {{0, 0}, {0, 0}};
};

Moments moments(const std::vector<double>& x) {
  Moments m;
  const std::size_t n = x.size() / 2;
  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a) m.mean[a] += x[2 * i + a] / n;
  for (std::size_t i = 0; i < n; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) m.cov[a][b] += (x[2 * i + a] - m.mean[a]) * (x[2 * i + b] - m.mean[b]) / n;
  return m;
}

std::vector<NoiseModel> all_kinds() {
  return {NoiseModel::isotropic_gaussian(2, 1.0), NoiseModel::diagonal_gaussian({-1.6, 2.5}, {0.2, 0.57}),
          NoiseModel::mixture_dirac_exp(2)};
}

}  // namespace

TEST(Noise, NoneIsZero) {
  for (double v : draw_noise(NoiseModel::none(2), 100, 1)) EXPECT_EQ(v, 0.0);
}

TEST(Noise, MixtureMean) {
  // 1/2 (-1) + 1/2 (0.12)
  EXPECT_DOUBLE_EQ(NoiseModel::mixture_dirac_exp(2).mean()[0], -0.44);
  const auto m = moments(draw_noise(NoiseModel::mixture_dirac_exp(2), 100000, 2));
  EXPECT_NEAR(m.mean[0], -0.44, 0.02);
  EXPECT_NEAR(m.mean[1], -0.44, 0.02);
}

TEST(Noise, GaussianMeanAndCovariance) {
  const auto m = moments(draw_noise(NoiseModel::isotropic_gaussian(2, 1.0), 100000, 3));
  const double n = 100000;
  for (int a = 0; a < 2; ++a) EXPECT_LE(std::abs(m.mean[a]), 4.0 / std::sqrt(n));
  EXPECT_NEAR(m.cov[0][0], 1.0, 0.03);
  EXPECT_NEAR(m.cov[1][1], 1.0, 0.03);
  EXPECT_NEAR(m.cov[0][1], 0.0, 0.03);
  const auto d = moments(draw_noise(NoiseModel::diagonal_gaussian({-1.6, 2.5}, {0.2, 0.57}), 100000, 4));
  EXPECT_LE(std::abs(d.mean[0] + 1.6), 4.0 * 0.2 / std::sqrt(n));
  EXPECT_LE(std::abs(d.mean[1] - 2.5), 4.0 * 0.57 / std::sqrt(n));
}

TEST(Noise, CoordinatesUncorrelated) {
  for (const auto& model : all_kinds()) {
    const auto m = moments(draw_noise(model, 100000, 5));
    const double corr = m.cov[0][1] / std::sqrt(m.cov[0][0] * m.cov[1][1]);
    EXPECT_LE(std::abs(corr), 0.02) << model.describe();
  }
}

TEST(Noise, EmpiricalCharacteristicFunction) {
  const std::size_t n = 100000;
  for (const auto& model : all_kinds()) {
    const auto x = draw_noise(model, n, 6);
    for (int j = 0; j < 20; ++j) {
      const double t = -1.0 + 2.0 * j / 19.0;
      cplx e = 0.0;
      for (std::size_t i = 0; i < n; ++i) e += std::exp(cplx(0.0, t * x[2 * i]));
      e /= static_cast<double>(n);
      EXPECT_LE(std::abs(e - model.coord_char_fn(0, t)), 5.0 / std::sqrt(static_cast<double>(n)))
          << model.describe() << " t=" << t;
    }
  }
}

TEST(Noise, MixtureCharacteristicFunctionClosedForm) {
  const auto m = NoiseModel::mixture_dirac_exp(2);
  const double t = 0.7;
  const cplx expected = 0.5 * std::exp(cplx(0.0, -t)) + 0.5 / (1.0 - 0.12 * cplx(0.0, t));
  EXPECT_NEAR(std::abs(m.coord_char_fn(1, t) - expected), 0.0, 1e-15);
}

TEST(Noise, RejectsBadInput) {
  EXPECT_THROW(NoiseModel::isotropic_gaussian(2, 0.0), ConfigError);
  EXPECT_THROW(NoiseModel::diagonal_gaussian({0.0}, {1.0, 1.0}), ConfigError);
  EXPECT_THROW(draw_noise(NoiseModel::none(2), 0, 1), ConfigError);
}

TEST(Scenario, Presets) {
  for (int id = 1; id <= 4; ++id) {
    const auto s = Scenario::preset(id);
    EXPECT_EQ(s.R_star, 3.0);
    EXPECT_EQ(s.C_star, (std::vector<double>{0.0, 0.0}));
  }
  EXPECT_TRUE(Scenario::preset(1).centered_noise());
  EXPECT_FALSE(Scenario::preset(2).centered_noise());
  EXPECT_TRUE(Scenario::preset(3).centered_noise());
  EXPECT_FALSE(Scenario::preset(4).centered_noise());
  EXPECT_EQ(Scenario::preset(4).noise.mean(), (std::vector<double>{-1.6, 2.5}));
  EXPECT_THROW(Scenario::preset(5), ConfigError);
}

TEST(Generate, NoiselessPointsOnCircle) {
  auto scn = Scenario::preset(1).without_noise();
  scn.C_star = {1.0, -2.0};
  const auto s = generate(scn, 1000, 9);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(std::hypot(s.data[2 * i] - 1.0, s.data[2 * i + 1] + 2.0), 3.0, 1e-12);
  }
}

TEST(Generate, Envelope) {
  const auto s = generate(Scenario::preset(1), 1000000, 10);
  double lo = 0.0, hi = 0.0;
  for (double v : s.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GE(lo, -3.0 - 5.5 * 0.12);
  EXPECT_LE(hi, 3.0 + 5.5 * 0.12);
  EXPECT_LE(lo, -3.0);
  EXPECT_GE(hi, 3.0);
}

TEST(Generate, Deterministic) {
  const auto a = generate(Scenario::preset(2), 500, 11);
  const auto b = generate(Scenario::preset(2), 500, 11);
  const auto c = generate(Scenario::preset(2), 500, 12);
  EXPECT_EQ(a.data, b.data);
  EXPECT_NE(a.data, c.data);
  EXPECT_EQ(a.seed, 11u);
  EXPECT_EQ(a.scenario_id, 2);
  EXPECT_THROW(generate(Scenario::preset(1), 0, 1), ConfigError);
}
