#include "hypgeo/verifier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hypgeo/errors.hpp"
#include "hypgeo/special_fn.hpp"

namespace hypgeo {
namespace {

// H/G for (1,1,2): F(2,2;3;z) = 2 d/dz[-log(1-z)/z] and F(2,1;2;z) = 1/(1-z).
Complex H_over_G_112(Complex z) { return 2.0 / z + 2.0 * (1.0 - z) * std::log(1.0 - z) / (z * z); }

TEST(Herglotz, LogarithmRatioClosedForm) {
  const Params p{1, 1, 2};
  EXPECT_NEAR(std::abs(ratio_H_over_G(p, 0.0) - 1.0), 0.0, 1e-15);
  for (Complex z : {Complex(-0.5, 0.0), Complex(0.3, 0.4), Complex(-3.0, 1.0), Complex(-40.0, 0.0),
                    Complex(0.2, -0.9), Complex(-1e6, 0.0)}) {
    const Complex want = H_over_G_112(z);
    EXPECT_LT(std::abs(ratio_H_over_G(p, z) - want), 1e-11 * std::abs(want)) << z;
  }
}

TEST(Herglotz, RatioPassesAtExamples) {
  const CheckReport r = check_herglotz(HerglotzFunction::H_over_G, Params{1, 1, 2});
  EXPECT_TRUE(r.passed) << r.location << " " << r.details;
  EXPECT_EQ(r.name, "herglotz:H_over_G");
  const CheckReport s = check_herglotz(HerglotzFunction::H_over_G, Params{1.5, 2, 3});
  EXPECT_TRUE(s.passed) << s.location << " " << s.details;
  const double far = ratio_H_over_G(Params{1.5, 2, 3}, -1e6).real();
  EXPECT_GT(far, 0.0);
  EXPECT_LT(far, 1e-2);  // decays like x^{a-b}
}

TEST(Herglotz, RatioPassesForRandomAdmissibleParams) {
  // Any failure here is an evaluation defect: the representation holds for
  // every -1 <= a <= c, 0 <= b <= c.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    const double c = 0.3 + 4.5 * U(rng);
    const double a = -1.0 + (c + 1.0) * U(rng);
    const double b = c * U(rng);
    const CheckReport r = check_herglotz(HerglotzFunction::H_over_G, Params{a, b, c});
    EXPECT_TRUE(r.passed) << "(" << a << "," << b << "," << c << ") " << r.location << " " << r.details;
  }
}

TEST(Herglotz, NormalizedMultiplier) {
  const Params p{2, 2, 4};
  EXPECT_NEAR(std::abs(M_normalized(p, 0.0) - 1.0), 0.0, 1e-14);
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 6; ++j) {
      const Complex z(0.1 * i, 0.1 * j);
      EXPECT_GE(M_normalized(p, z).imag(), 0.0) << z;
    }
  }
  const CheckReport r = check_herglotz(HerglotzFunction::M_normalized, p);
  EXPECT_TRUE(r.passed) << r.location << " " << r.details;
  EXPECT_THROW(check_herglotz(HerglotzFunction::M_normalized, Params{1, 1, 2}), Error);
  EXPECT_THROW(check_herglotz(HerglotzFunction::H_over_G, Params{3, 1, 2}), Error);
}

TEST(LimitInfinity, CaseTrends) {
  const CheckReport one = check_limit_infinity(Params{1, 1.5, 2});
  EXPECT_TRUE(one.passed) << one.details;
  const CheckReport three = check_limit_infinity(Params{1, 2, 2.5});
  EXPECT_TRUE(three.passed) << three.details;
  EXPECT_THROW(check_limit_infinity(Params{1, 2.5, 3}), Error);
}

TEST(LimitInfinity, EqualParametersGrowOnlyLogarithmically) {
  // b = a: x H/G grows like log x, so it is increasing but cannot reach 1e3
  // by x = 1e6; the check reports that honestly.
  const Params p{1.5, 1.5, 3.2};
  const CheckReport r = check_limit_infinity(p);
  EXPECT_FALSE(r.passed);
  std::vector<double> v;
  for (double x : default_x_list()) v.push_back(x * ratio_H_over_G(p, Complex(-x, 0.0)).real());
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GT(v[i], v[i - 1]);
  // Increments per decade settle to a constant.
  const double d1 = v[4] - v[3], d2 = v[5] - v[4];
  EXPECT_NEAR(d2 / d1, 1.0, 0.01);
  EXPECT_LT(v.back(), 1e3);
}

TEST(GFAsymptotics, RegimeClassification) {
  EXPECT_EQ(classify_gf_regime(Params{1, 1, 1.5}), GFRegime::below_sum);
  EXPECT_EQ(classify_gf_regime(Params{1, 1, 2}), GFRegime::zero_balanced);
  EXPECT_EQ(classify_gf_regime(Params{1, 1, 2.5}), GFRegime::fractional_excess);
  EXPECT_EQ(classify_gf_regime(Params{1, 1, 3}), GFRegime::unit_excess);
  EXPECT_THROW(classify_gf_regime(Params{1, 1, 3.5}), Error);
}

TEST(GFAsymptotics, LeadingTerms) {
  EXPECT_DOUBLE_EQ(gf_leading_term(Params{1, 1, 1.5}, GFRegime::below_sum, 1e-3), 0.5 / 1e-3);
  // (1,1,2.5): A = Gamma(1/2) Gamma(3/2)^2 / (Gamma(2) Gamma(1) Gamma(1/2)) = pi/4.
  EXPECT_NEAR(gf_leading_term(Params{1, 1, 2.5}, GFRegime::fractional_excess, 1e-4), kPi / 4 * 100.0,
              1e-10);
  // (1,1,2): G/F = (1/(1-z)) / (-log(1-z)/z) exactly.
  const double s = 1e-3;
  const double exact = (1 - s) / (s * -std::log(s));
  EXPECT_NEAR(ratio_G_over_F(Params{1, 1, 2}, 1 - s).real() /
                  gf_leading_term(Params{1, 1, 2}, GFRegime::zero_balanced, s),
              exact * (-std::log(s)) * s, 1e-12);
}

TEST(GFAsymptotics, RepresentativeTriplesPass) {
  for (const Params p : {Params{1, 1, 1.5}, Params{1, 1, 2}, Params{1, 1, 2.5}, Params{1, 1, 3}}) {
    const CheckReport r = check_GF_asymptotics(p);
    EXPECT_TRUE(r.passed) << p.c << " " << r.location << " " << r.details;
  }
  // Regime 4 difference tends to a constant.
  const CheckReport r4 = check_GF_asymptotics(Params{0.7, 1.3, 3});
  EXPECT_TRUE(r4.passed) << r4.details;
}

TEST(GFAsymptotics, FittedExponentIsContinuousAcrossBalance) {
  // Slopes over s in 1e-2..1e-5: -1 just below the balanced line, alpha - 1
  // just above it.
  const auto s = default_s_list();
  EXPECT_NEAR(fit_gf_exponent(Params{1, 1, 1.9}, s), -1.0, 0.15);
  EXPECT_NEAR(fit_gf_exponent(Params{1, 1, 2.1}, s), -0.9, 0.15);
  EXPECT_NEAR(fit_gf_exponent(Params{0.6, 1.4, 1.9}, s), -1.0, 0.15);
  EXPECT_NEAR(fit_gf_exponent(Params{0.6, 1.4, 2.1}, s), -0.9, 0.15);
}

TEST(RatioBounds, ClosedFormAndEdges) {
  const double r = ratio_G_over_F(Params{1, 1, 2}, -1.0).real();
  EXPECT_NEAR(r, 0.5 / std::log(2.0), 1e-14);
  EXPECT_GE(r, 2.0 / 3.0);
  EXPECT_LE(r, 0.75);
  // a = 0: F = 1, so the ratio is F(1, 1; 2; -1) = log 2.
  EXPECT_NEAR(ratio_G_over_F(Params{0, 1, 2}, -1.0).real(), std::log(2.0), 1e-15);
}

TEST(RatioBounds, GridPassesAndSlackMatters) {
  const CheckReport r = check_ratio_bounds_grid();
  EXPECT_TRUE(r.passed) << r.location;
  EXPECT_NE(r.details.find("8000 grid points"), std::string::npos) << r.details;
  RatioGrid tight;
  tight.n = 4;
  tight.slack = -0.05;  // demands a margin the bounds do not leave at b = 0
  EXPECT_FALSE(check_ratio_bounds_grid(tight).passed);
}

TEST(LogLimits, ExpansionAndTrend) {
  EXPECT_NEAR(std::abs(neg_rotated_log(kPi) - std::log(2.0)), 0.0, 1e-15);
  for (double t : {1e-1, 1e-2, 1e-4, 1.0, 2.5}) {
    EXPECT_LT(std::abs(neg_rotated_log(t) - neg_rotated_log_expansion(t)), 1e-12) << t;
  }
  EXPECT_LT(std::abs(neg_rotated_log(1e-4).imag() - kPi / 2), 1e-3);
  EXPECT_GT(neg_rotated_log(1e-4).real(), neg_rotated_log(1e-2).real());
  const CheckReport r = check_log_limits();
  EXPECT_TRUE(r.passed) << r.location << " " << r.details;
  EXPECT_THROW(check_log_limits({1e-2, 1e-1}), Error);
}

TEST(NotConvex, Witnesses) {
  for (const auto& ab : {std::pair{0.3, 0.5}, std::pair{0.5, 0.5}, std::pair{0.9, 0.9}}) {
    const Params p{ab.first, ab.second, ab.first + ab.second};
    const CheckReport r = check_not_convex(p);
    EXPECT_TRUE(r.passed) << r.details;
    EXPECT_LT(r.worst_violation, -1e-6);
  }
  const Witness w = find_not_convex_witness(Params{0.9, 0.9, 1.8});
  EXPECT_EQ(w.stage, "boundary-layer");
  // The witness is genuine: it lies inside the disc and its Re W agrees with
  // the direct assembly at the same point.
  EXPECT_LT(std::abs(w.z), 1.0);
  EXPECT_NEAR(pre_schwarzian_W_direct(Params{0.9, 0.9, 1.8}, w.z).real(), w.min_re_w, 1e-6);
}

TEST(NotConvex, LogarithmHasNoWitness) {
  const CheckReport r = check_not_convex(Params{1, 1, 2});
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(r.worst_violation, 0.5, 1e-4);
  EXPECT_NE(r.details.find("ab>=1"), std::string::npos);
  EXPECT_THROW(check_not_convex(Params{0.5, 0.5, 1.5}), Error);
}

TEST(Scan, RangeValuesAreClean) {
  const std::vector<double> v = Range{0.2, 1.0, 0.2}.values();
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[2], 0.6);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_EQ((Range{1.0, 2.18, 0.05}.values().size()), 24u);
}

TEST(Scan, ConvexityRegion) {
  ScanOptions opt;
  opt.grid = GridOptions{{0.9, 0.99}, 512};
  opt.trace_samples = 1000;
  const auto rows = scan_region(Range{1.0, 1.5, 0.25}, Range{1.0, 2.0, 0.5}, ScanMode::thm13, opt);
  ASSERT_EQ(rows.size(), 9u);
  int inside = 0;
  for (const auto& r : rows) {
    EXPECT_FALSE(scan_record_failed(r, ScanMode::thm13)) << r.a << "," << r.b << " " << r.verdict << " " << r.detail;
    if (r.in_region) {
      ++inside;
      EXPECT_EQ(r.verdict, "convex");
      EXPECT_GE(*r.kappa, -1e-6);
    }
  }
  EXPECT_GE(inside, 6);

  const auto one = scan_region(Range{1.2, 1.2, 0.1}, Range{1.2, 1.2, 0.1}, ScanMode::thm13, opt);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].in_region);
  EXPECT_EQ(one[0].verdict, "convex");
}

TEST(Scan, StarlikenessOrderOnConvexityRegion) {
  // Convex maps are starlike of order 1/2.
  for (double a = 1.0; a <= 1.5 + 1e-9; a += 0.05) {
    for (double b = a; b <= 4.0; b += 0.1) {
      const Params p{a, b, a + b};
      const auto conds = conditions_met(p);
      if (!has_condition(conds, Condition::thm13_case1) && !has_condition(conds, Condition::thm13_case2)) continue;
      EXPECT_GE(sigma_closed_form(p), 0.5) << a << "," << b;
    }
  }
}

TEST(Scan, NonConvexRegion) {
  const auto rows = scan_region(Range{0.4, 0.8, 0.4}, Range{0.4, 0.8, 0.4}, ScanMode::thmA);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.in_region);
    EXPECT_EQ(r.verdict, "not_convex") << r.a << "," << r.b;
    EXPECT_FALSE(scan_record_failed(r, ScanMode::thmA));
  }
}

TEST(Scan, ClosedFormModeFlagsVanishingDerivative) {
  ScanOptions opt;
  opt.grid = GridOptions{{0.9, 0.99, 0.999}, 512};
  opt.c = 2.25;
  const auto rows = scan_region(Range{2.25, 2.25, 0.1}, Range{2.25, 2.25, 0.1}, ScanMode::thm12, opt);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].in_region);
  EXPECT_EQ(rows[0].verdict, "undefined");
  EXPECT_TRUE(scan_record_failed(rows[0], ScanMode::thm12));

  opt.c.reset();
  opt.grid = GridOptions{{0.99, 0.999, 0.9999}, 1024};
  const auto ok = scan_region(Range{2, 2, 0.1}, Range{2, 2, 0.1}, ScanMode::thm12, opt);
  EXPECT_EQ(ok[0].verdict, "agree") << ok[0].detail;
}

}  // namespace
}  // namespace hypgeo
