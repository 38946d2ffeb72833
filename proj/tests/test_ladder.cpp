#include <gtest/gtest.h>

#include <cmath>

#include "alps/ladder.hpp"

using namespace alps;

namespace {
double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
}  // namespace

TEST(Spacing, Ell) {
  EXPECT_DOUBLE_EQ(Spacing::standard(1.0).ell(3.0), 3.0);
  EXPECT_DOUBLE_EQ(Spacing::quanta(3.0, 1.0).ell(4.0), 8.0);
  EXPECT_DOUBLE_EQ(Spacing::standard().ell(1.0), 2.38);
}

TEST(Spacing, QuantaNeedsKAboveTwo) {
  EXPECT_THROW(Spacing::quanta(2.0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(Spacing::quanta(2.5).validate());
  EXPECT_THROW(build_ladder(16, 16.0, Spacing::quanta(2.0)), std::invalid_argument);
}

TEST(Spacing, H) {
  EXPECT_EQ(Spacing::standard().h(1.0), 0.0);
  EXPECT_NEAR(Spacing::standard(1.0).h(std::exp(1.0)), 1.0, 1e-15);
  EXPECT_NEAR(Spacing::quanta(4.0, 1.0).h(1e12), 1.0, 1e-11);
  EXPECT_THROW(Spacing::standard().h(0.5), std::domain_error);
  EXPECT_NEAR(Spacing::standard().h(-7.0), Spacing::standard().h(7.0), 0.0);
}

TEST(Spacing, HClosedFormsMatchQuadrature) {
  for (const auto& s : {Spacing::standard(), Spacing::standard(1.3), Spacing::quanta(3.0), Spacing::quanta(5.0, 0.7)})
    for (double x : {1.5, 10.0, 1e3, 1e6}) EXPECT_NEAR(s.h(x), h_by_quadrature(s, x), 1e-10 * (1.0 + s.h(x)));
}

TEST(Spacing, HInverse) {
  for (const auto& s : {Spacing::standard(), Spacing::quanta(3.0)})
    for (double x : {1.0, 2.0, 50.0, 1e4}) EXPECT_NEAR(s.h_inverse(s.h(x)) / x, 1.0, 1e-10);
}

TEST(Spacing, EffectiveBetaIdentityForStandard) {
  EXPECT_DOUBLE_EQ(Spacing::standard().effective_beta(123.0), 123.0);
  const auto q = Spacing::quanta(3.0);
  EXPECT_NEAR(q.effective_beta(1.0), 1.0, 1e-15);
  EXPECT_GT(q.effective_beta(10.0), 1.0);
}

TEST(Ladder, HandIteration) {
  const auto l = build_ladder(4, 3.375, Spacing::standard(1.0));
  ASSERT_EQ(l.betas.size(), 4u);
  EXPECT_DOUBLE_EQ(l.betas[0], 1.0);
  EXPECT_DOUBLE_EQ(l.betas[1], 1.5);
  EXPECT_DOUBLE_EQ(l.betas[2], 2.25);
  EXPECT_DOUBLE_EQ(l.betas[3], 3.375);
  EXPECT_EQ(l.top(), 3);
  EXPECT_FALSE(l.clamped);
}

TEST(Ladder, SingleRung) {
  const auto l = build_ladder(9, 1.0, Spacing::standard());
  ASSERT_EQ(l.betas.size(), 1u);
  EXPECT_EQ(l.top(), 0);
}

TEST(Ladder, RejectsBetamaxBelowOne) {
  EXPECT_THROW(build_ladder(4, 0.5, Spacing::standard()), std::domain_error);
}

TEST(Ladder, RungCountGrowth) {
  const int d = 10000;
  const auto l = build_ladder(d, d, Spacing::standard(1.0));
  const double expected = std::sqrt(d) * std::log(static_cast<double>(d));
  EXPECT_NEAR(l.top() / expected, 1.0, 0.05);
}

TEST(Ladder, ClampedLastRung) {
  const auto l = build_ladder(16, 10.0, Spacing::standard());
  EXPECT_DOUBLE_EQ(l.betamax(), 10.0);
  EXPECT_TRUE(l.clamped);
  for (std::size_t i = 1; i < l.betas.size(); ++i) EXPECT_GT(l.betas[i], l.betas[i - 1]);
}

TEST(Ladder, AlignedTopKeepsEqualSteps) {
  const auto l = build_ladder(16, 10.0, Spacing::standard(), true);
  EXPECT_FALSE(l.clamped);
  EXPECT_GT(l.betamax(), 10.0);
  const double ratio = 1.0 + 2.38 / 4.0;
  for (std::size_t i = 1; i < l.betas.size(); ++i) EXPECT_NEAR(l.betas[i] / l.betas[i - 1], ratio, 1e-12);
}

TEST(Ladder, RecurrenceAndHIncrements) {
  // 1/ell is decreasing, so each step's h increment times sqrt(d) lies in
  // [ell(b_{i-1}) / ell(b_i), 1].
  for (int d : {16, 256, 4096})
    for (const auto& s : {Spacing::standard(), Spacing::quanta(3.0)}) {
      const auto l = build_ladder(d, d, s);
      const double rd = std::sqrt(static_cast<double>(d));
      for (int i = 1; i < l.top(); ++i) {
        const double a = l.betas[static_cast<std::size_t>(i - 1)], b = l.betas[static_cast<std::size_t>(i)];
        EXPECT_LT(std::abs(b - a - s.ell(a) / rd), 1e-12 * b) << d << " " << i;
        const double inc = (s.h(b) - s.h(a)) * rd;
        EXPECT_LE(inc, 1.0 + 1e-9);
        EXPECT_GE(inc, s.ell(a) / s.ell(b) - 1e-9);
      }
    }
}

TEST(Skew, LimitingAcceptance) {
  EXPECT_NEAR(limiting_acceptance(1.0, 2.38), 2.0 * phi_cdf(-1.19), 1e-14);
  // The familiar 0.234, to three places.
  EXPECT_NEAR(limiting_acceptance(1.0, 2.38), 0.234, 5e-4);
  EXPECT_NEAR(std::sqrt(limiting_acceptance(1.0, 2.38)), 0.4838, 1e-4);
  EXPECT_NEAR(std::sqrt(limiting_acceptance(2.0, 2.38)), std::sqrt(2.0 * phi_cdf(-2.38 / (2.0 * std::sqrt(2.0)))), 1e-14);
  EXPECT_NEAR(std::sqrt(limiting_acceptance(2.0, 2.38)), 0.6326, 1e-4);
  EXPECT_NEAR(limiting_acceptance(2.0, 2.38, SkewConvention::Root), 2.0 * phi_cdf(-2.38 * std::sqrt(2.0) / 2.0), 1e-14);
}

TEST(Skew, Constants) {
  MixtureTarget t{{{1.0, 1.0, 0.5, 0.0}, {1.0, 2.0, 0.5, 0.0}}, 8};
  const auto c = skew_constants(t, 2.38);
  EXPECT_NEAR(c.alpha, c.s1 / (c.s1 + c.s2), 1e-15);
  EXPECT_NEAR(c.alpha, 0.4334, 1e-4);
  EXPECT_DOUBLE_EQ(c.wmax, 1.0 / c.s1);
  EXPECT_DOUBLE_EQ(c.wmin, -1.0 / c.s2);
  MixtureTarget sym{{{1.0, 2.0, 0.5, 0.0}, {1.0, 2.0, 0.5, 0.0}}, 8};
  EXPECT_DOUBLE_EQ(skew_constants(sym, 2.38).alpha, 0.5);
  MixtureTarget three{{{1.0, 2.0, 0.3, 0.0}, {1.0, 2.0, 0.3, 0.0}, {1.0, 2.0, 0.4, 0.0}}, 8};
  EXPECT_THROW(skew_constants(three, 2.38), std::invalid_argument);
}
