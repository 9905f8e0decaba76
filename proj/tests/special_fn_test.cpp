#include "hypgeo/special_fn.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "hypgeo/errors.hpp"

namespace hypgeo {
namespace {

TEST(LnGamma, ExactValues) {
  EXPECT_EQ(ln_gamma(1.0), 0.0);
  EXPECT_NEAR(ln_gamma(2.0), 0.0, 1e-16);
  EXPECT_NEAR(ln_gamma(5.0), std::log(24.0), 1e-14);
  EXPECT_NEAR(ln_gamma(0.5), 0.5 * std::log(kPi), 1e-15);
}

TEST(LnGamma, MatchesLibm) {
  for (double x = 0.5; x <= 100.0; x += 0.0731) {
    const double ref = std::lgamma(x);
    // lgamma is only absolutely accurate next to its roots at 1 and 2.
    const double tol = std::max(1e-13 * std::abs(ref), 4e-16);
    EXPECT_NEAR(ln_gamma(x), ref, tol) << "x=" << x;
  }
}

TEST(LnGamma, DuplicationIdentity) {
  // log G(2x) = (2x-1) log 2 - log(pi)/2 + log G(x) + log G(x+1/2)
  for (double x = 0.5; x <= 40.0; x += 0.37) {
    const double rhs = (2 * x - 1) * std::log(2.0) - 0.5 * std::log(kPi) + ln_gamma(x) +
                       ln_gamma(x + 0.5);
    EXPECT_NEAR(ln_gamma(2 * x), rhs, 2e-13 * std::max(1.0, std::abs(rhs))) << "x=" << x;
  }
}

TEST(LnGamma, RejectsNonpositive) {
  for (double x : {0.0, -1.0, -0.5}) {
    try {
      ln_gamma(x);
      FAIL() << "no error for x=" << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
  }
}

TEST(Digamma, EulerMascheroniLimit) {
  // H_n - log n with its first asymptotic corrections removed.
  const int n = 100000;
  double h = 0.0;
  for (int k = n; k >= 1; --k) h += 1.0 / k;
  const double nn = n;
  const double gamma = h - std::log(nn) - 1.0 / (2 * nn) + 1.0 / (12 * nn * nn);
  EXPECT_NEAR(digamma(1.0), -gamma, 1e-12);
}

TEST(Digamma, MatchesDerivativeOfLnGamma) {
  for (double x = 0.1; x <= 100.0; x *= 1.21) {
    const double h = 1e-5 * std::max(1.0, x);
    const double fd = (std::lgamma(x + h) - std::lgamma(x - h)) / (2 * h);
    EXPECT_NEAR(digamma(x), fd, 1e-8 * std::max(1.0, std::abs(fd))) << "x=" << x;
  }
}

TEST(Digamma, SeriesOracle) {
  // psi(x) = -gamma + sum_k (1/(k+1) - 1/(k+x)), tail summed by its
  // Euler-Maclaurin remainder (x-1)/K - (x-1)x/(2K^2).
  for (double x : {0.1, 0.5, 1.7, 3.3, 12.0}) {
    const long K = 2000000;
    double s = 0.0;
    for (long k = K - 1; k >= 0; --k) s += 1.0 / (k + 1) - 1.0 / (k + x);
    const double Kd = static_cast<double>(K);
    s += (x - 1) / Kd - (x - 1) * x / (2 * Kd * Kd);
    EXPECT_NEAR(digamma(x), -kEulerGamma + s, 1e-12) << "x=" << x;
  }
}

TEST(Digamma, RecurrenceAndHalf) {
  EXPECT_NEAR(digamma(2.0), digamma(1.0) + 1.0, 1e-15);
  EXPECT_NEAR(digamma(0.5), digamma(1.0) - 2 * std::log(2.0), 1e-14);
  for (double x = 0.1; x < 50.0; x += 0.913) {
    EXPECT_NEAR(digamma(x + 1), digamma(x) + 1 / x, 1e-12 * std::max(1.0, 1 / x)) << "x=" << x;
  }
}

TEST(Digamma, ReflectionForNegativeArguments) {
  for (double x : {0.3, 0.77, 1.4, 2.6}) {
    EXPECT_NEAR(digamma_real(1 - x) - digamma_real(x), kPi / std::tan(kPi * x), 1e-11) << x;
  }
  EXPECT_THROW(digamma(0.0), Error);
}

TEST(Beta, ValuesAndSymmetry) {
  EXPECT_NEAR(beta(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(beta(1, 2), 0.5, 1e-15);
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double a = 0.5 * i, b = 0.5 * j;
      EXPECT_DOUBLE_EQ(beta(a, b), beta(b, a));
      EXPECT_NEAR(beta(a, b), std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)),
                  1e-13 * beta(a, b));
    }
  }
}

TEST(Pochhammer, Basics) {
  EXPECT_EQ(pochhammer(2.7, 0), 1.0);
  EXPECT_EQ(pochhammer(3, 4), 360.0);
  double fact = 1.0;
  for (unsigned n = 1; n <= 15; ++n) {
    fact *= n;
    EXPECT_EQ(pochhammer(1, n), fact);
  }
  EXPECT_EQ(pochhammer(-2, 3), 0.0);
}

TEST(RamanujanR, Values) {
  EXPECT_NEAR(ramanujan_R(1, 1), 0.0, 4e-15);
  EXPECT_NEAR(ramanujan_R(0.5, 0.5), 4 * std::log(2.0), 1e-13);
  EXPECT_DOUBLE_EQ(ramanujan_R(0.3, 2.2), ramanujan_R(2.2, 0.3));
}

TEST(GammaReal, NegativeArguments) {
  EXPECT_NEAR(gamma_real(-0.5), -2 * std::sqrt(kPi), 1e-13);
  EXPECT_NEAR(gamma_real(-1.5), 4 * std::sqrt(kPi) / 3, 1e-13);
  EXPECT_EQ(reciprocal_gamma(-2.0), 0.0);
  EXPECT_EQ(reciprocal_gamma(0.0), 0.0);
  int sign = 0;
  EXPECT_NEAR(log_abs_gamma(-2.5, &sign), std::lgamma(-2.5), 1e-13);
  EXPECT_EQ(sign, -1);
  EXPECT_TRUE(is_nonpositive_integer(-3.0));
  EXPECT_FALSE(is_nonpositive_integer(-3.5));
  EXPECT_FALSE(is_nonpositive_integer(1.0));
}

}  // namespace
}  // namespace hypgeo
