#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sphdeconv/bessel.hpp"
#include "sphdeconv/error.hpp"

using namespace sphdeconv;
using namespace sphdeconv::bessel;

TEST(Bessel, ValuesAtZero) {
  EXPECT_EQ(bessel_j(0.0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1.0, 0.0), 0.0);
  EXPECT_EQ(bessel_j(2.5, 0.0), 0.0);
  EXPECT_EQ(bessel_j_int(0, 0.0), 1.0);
}

TEST(Bessel, J0AtOneMatchesLongSeries) {
  // 30- and 50-term partial sums of the ascending series
  auto partial = [](int terms) {
    double s = 0.0, term = 1.0;
    for (int m = 0; m < terms; ++m) {
      s += term;
      term *= -0.25 / ((m + 1.0) * (m + 1.0));
    }
    return s;
  };
  EXPECT_NEAR(partial(30), partial(50), 1e-16);
  EXPECT_NEAR(bessel_j(0.0, 1.0), partial(50), 1e-15);
  EXPECT_NEAR(bessel_j(0.0, 1.0), 0.76519768655796655, 1e-15);
}

TEST(Bessel, IntegerOrdersMatchIntegralRepresentation) {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {0.01, 0.3, 1.0, 2.5, 5.0, 7.9, 8.0, 8.1, 12.0, 20.0, 33.3, 49.9, 50.0}) {
      EXPECT_NEAR(bessel_j(n, x), oracle::bessel_integral(n, x), 1e-12) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Bessel, FractionalOrdersMatchStdLibrary) {
  for (double a : {0.5, 1.5, 2.5, 0.3, 3.7}) {
    for (double x : {0.1, 1.0, 4.0, 7.5, 9.0, 15.0, 30.0, 45.0}) {
      EXPECT_NEAR(bessel_j(a, x), std::cyl_bessel_j(a, x), 1e-11) << "a=" << a << " x=" << x;
    }
  }
}

TEST(Bessel, HalfIntegerClosedForm) {
  // J_{1/2}(x) = sqrt(2/(pi x)) sin x
  for (double x : {0.2, 1.0, 3.0, 6.0, 10.0, 25.0}) {
    EXPECT_NEAR(bessel_j(0.5, x), std::sqrt(2.0 / (M_PI * x)) * std::sin(x), 1e-12);
  }
}

TEST(Bessel, BatchedOrdersEqualPointwise) {
  std::vector<double> out(15);
  for (double x : {0.0, 0.7, 5.0, 8.0, 9.5, 40.0}) {
    bessel_j_orders(x, out);
    for (int k = 0; k < 15; ++k) EXPECT_NEAR(out[k], bessel_j(k, x), 1e-14) << k << " " << x;
  }
}

TEST(Bessel, NegativeIntegerOrders) {
  for (double x : {0.0, 0.7, 3.0, 12.0}) {
    EXPECT_EQ(bessel_j_int(-1, x), -bessel_j(1.0, x));
    EXPECT_EQ(bessel_j_int(-2, x), bessel_j(2.0, x));
    EXPECT_EQ(bessel_j_int(-5, x), -bessel_j(5.0, x));
  }
  EXPECT_EQ(bessel_j_int(-2, 0.7), bessel_j(2.0, 0.7));
}

TEST(Bessel, RejectsOutOfRange) {
  EXPECT_THROW(bessel_j(-1.0, 1.0), ConfigError);
  EXPECT_THROW(bessel_j(0.0, -0.1), RangeError);
  EXPECT_THROW(bessel_j(0.0, 50.0001), RangeError);
  EXPECT_THROW(bessel_j(0.0, std::nan("")), RangeError);
  EXPECT_THROW(bessel_j_int(3, 51.0), RangeError);
  EXPECT_THROW(jacobi_anger(-60.0, 0.0, 10), RangeError);
  EXPECT_THROW(bessel_j(0.0, 1.0, BesselEvalConfig{0, 1e-12}), ConfigError);
  EXPECT_THROW(bessel_j(0.0, 1.0, BesselEvalConfig{40, -1.0}), ConfigError);
}

TEST(Bessel, GammaExactAtIntegersAndHalfIntegers) {
  EXPECT_EQ(gamma_fn(1.0), 1.0);
  EXPECT_EQ(gamma_fn(5.0), 24.0);
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(M_PI), 1e-15);
  // Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
  EXPECT_NEAR(gamma_fn(3.5), 720.0 * std::sqrt(M_PI) / (64.0 * 6.0), 1e-13);
  EXPECT_NEAR(gamma_fn(2.3), std::tgamma(2.3), 1e-13);
  EXPECT_THROW(gamma_fn(0.0), ConfigError);
}

TEST(Bessel, HFunction) {
  EXPECT_DOUBLE_EQ(h_func(2, 0.0), 0.5);
  EXPECT_NEAR(h_func(3, 0.0), 1.0 / (std::pow(2.0, 1.5) * std::tgamma(2.5)), 1e-15);
  EXPECT_NEAR(h_func(2, 1.0), bessel_j(1.0, 1.0), 1e-15);
  for (int d : {2, 3, 4, 5}) EXPECT_NEAR(h_func(d, 1e-8), h_func(d, 0.0), 1e-8);
  EXPECT_NEAR(h_func(3, 20.0), bessel_j(1.5, 20.0) / std::pow(20.0, 1.5), 1e-15);
  EXPECT_THROW(h_func(1, 1.0), ConfigError);
}

TEST(Bessel, RecurrenceIdentity) {
  for (int a = 1; a <= 3; ++a) {
    for (int i = 1; i <= 100; ++i) {
      const double x = 0.1 * i;
      const double r = bessel_j(a + 1, x) - (2.0 * a / x) * bessel_j(a, x) + bessel_j(a - 1, x);
      EXPECT_LE(std::abs(r), 1e-9) << a << " " << x;
    }
  }
}

TEST(Bessel, LipschitzBound) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(1e-9, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen), y = u(gen);
    for (int k = 0; k <= 5; ++k) {
      EXPECT_LE(std::abs(bessel_j(k, x) - bessel_j(k, y)), std::abs(x - y) + 1e-12);
    }
  }
}

TEST(Bessel, SmallArgumentLowerBound) {
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    for (int i = 0; i < 100; ++i) {
      const double x = i / 100.0;
      const double bound =
          std::pow(x, a) / (std::pow(2.0, a) * std::tgamma(a + 1.0)) * (1.0 - x * x / (4.0 * (a + 1.0)));
      EXPECT_GE(bessel_j(a, x), bound - 1e-12) << a << " " << x;
    }
  }
}

TEST(Bessel, WeightedSquareIntegralLowerBound) {
  for (double R : {1.0, 3.0}) {
    for (double nu : {0.1, 0.3}) {
      if (!(nu * R < 1.0)) continue;
      for (int N = 1; N <= 5; ++N) {
        double fact = 1.0;
        for (int j = 2; j <= N; ++j) fact *= j;
        const double bound = 9.0 * nu * nu / 32.0 * std::pow(nu * R, 2 * N) /
                             ((N + 1) * std::pow(2.0, 2 * N) * fact * fact);
        for (int k = 0; k <= N; ++k) {
          // composite midpoint rule, 10^4 nodes
          const int M = 10000;
          double s = 0.0;
          for (int j = 0; j < M; ++j) {
            const double r = (j + 0.5) * nu / M;
            const double jk = oracle::bessel_integral(k, r * R, 64);
            s += r * jk * jk;
          }
          s *= nu / M;
          EXPECT_GE(s, bound - 1e-12) << R << " " << nu << " " << N << " " << k;
        }
      }
    }
  }
}

TEST(Bessel, HDerivativeMatchesFiniteDifference) {
  for (int d : {2, 3}) {
    for (int i = 0; i <= 49; ++i) {
      const double x = 0.1 + i * 0.1;
      const double h = 1e-5;
      const double fd = (h_func(d, x + h) - h_func(d, x - h)) / (2.0 * h);
      EXPECT_NEAR(fd, h_func_derivative(d, x), 1e-6);
      EXPECT_NEAR(h_func_derivative(d, x), -bessel_j(d / 2.0 + 1.0, x) / std::pow(x, d / 2.0), 1e-15);
    }
  }
}

TEST(Bessel, BallAverageSeries) {
  for (int d : {2, 3}) {
    for (int i = 1; i <= 50; ++i) {
      const double x = 0.1 * i;
      double s = 0.0;
      for (int k = 0; k <= 30; ++k) {
        s += std::pow(-1.0, k) * std::pow(x, 2 * k) /
             (std::pow(4.0, k) * std::tgamma(k + 1.0) * std::tgamma(d / 2.0 + k + 1.0));
      }
      EXPECT_NEAR(s, std::pow(2.0, d / 2.0) * h_func(d, x), 1e-10) << d << " " << x;
    }
  }
}

TEST(Bessel, JacobiAnger) {
  EXPECT_NEAR(std::abs(jacobi_anger(0.0, 1.234, 5) - 1.0), 0.0, 1e-15);
  EXPECT_LE(std::abs(jacobi_anger(2.0, 0.0, 30) - std::exp(std::complex<double>(0.0, 2.0))), 1e-10);
  EXPECT_LE(std::abs(jacobi_anger(5.0, M_PI / 3, 40) - std::exp(std::complex<double>(0.0, 2.5))),
            1e-10);
  EXPECT_LE(std::abs(jacobi_anger(-4.0, 0.7, 40) -
                     std::exp(std::complex<double>(0.0, -4.0 * std::cos(0.7)))),
            1e-10);
  // K >= |z| + 20 reaches 1e-10 up to |z| ~ 16
  for (double z : {10.0, 15.0, 16.0}) {
    const auto v = jacobi_anger(z, 0.4, static_cast<int>(std::ceil(z)) + 20);
    EXPECT_LE(std::abs(v - std::exp(std::complex<double>(0.0, z * std::cos(0.4)))), 1e-10) << z;
  }
  // beyond that the error is the series tail, about 2 |J_{K+1}(z)|
  for (double z : {25.0, 30.0, 45.0}) {
    const int K = static_cast<int>(std::ceil(z)) + 20;
    const double tail = 2.0 * std::abs(std::cyl_bessel_j(K + 1.0, z));
    for (double th : {0.0, 0.4, 2.0}) {
      const auto v = jacobi_anger(z, th, K);
      EXPECT_LE(std::abs(v - std::exp(std::complex<double>(0.0, z * std::cos(th)))), 1.5 * tail) << z;
    }
  }
  EXPECT_THROW(jacobi_anger(1.0, 0.0, 0), ConfigError);
}
