#include <gtest/gtest.h>

#include <boost/math/distributions/skew_normal.hpp>

#include <cmath>

#include "alps/demo.hpp"
#include "alps/numerics.hpp"
#include "alps/stats.hpp"

using namespace alps;

TEST(Demo, SkewNormalDensityMatchesBoost) {
  const SkewNormalMode m{1.0, -20.0, 1.0, 10.0};
  boost::math::skew_normal_distribution<double> ref(-20.0, 1.0, 10.0);
  for (double x : {-22.0, -20.5, -20.0, -19.0, -17.0}) EXPECT_NEAR(m.log_pdf(x), std::log(boost::math::pdf(ref, x)), 1e-10);
}

TEST(Demo, SimpsonRule) {
  std::vector<double> y;
  for (int i = 0; i <= 10; ++i) y.push_back(std::pow(0.1 * i, 3));
  EXPECT_NEAR(simpson(y, 0.1), 0.25, 1e-14);  // exact for cubics
  EXPECT_THROW(simpson({1.0, 2.0}, 0.1), std::invalid_argument);
}

TEST(Demo, MarginalMass) {
  DemoSpec spec;
  std::vector<double> y;
  for (int i = 0; i <= 40000; ++i) y.push_back(demo_marginal(spec, spec.grid_lo + spec.grid_step * i));
  EXPECT_NEAR(simpson(y, spec.grid_step), 1.0, 1e-6);
}

TEST(Demo, TemperedTableSamplesAndNormaliser) {
  const SkewNormalMode m{1.0, 20.0, 2.0, 10.0};
  // At beta = 1 the table is the skew-normal law itself.
  TemperedTable t(m, 1.0, 2048);
  EXPECT_NEAR(t.log_norm(), 0.0, 1e-8);
  Engine rng = make_engine(1);
  std::vector<double> x(20000);
  for (double& v : x) v = t.sample(rng);
  boost::math::skew_normal_distribution<double> ref(20.0, 2.0, 10.0);
  EXPECT_GT(ks_one_sample(x, [&](double v) { return boost::math::cdf(ref, v); }).p_value, 0.01);
  // Normaliser at beta = 4 against plain quadrature.
  TemperedTable t4(m, 4.0, 2048);
  const double q = integrate([&](double v) { return std::exp(4.0 * m.log_pdf(v)); }, 10.0, 30.0, 1e-12);
  EXPECT_NEAR(t4.log_norm(), std::log(q), 1e-8);
}

TEST(Demo, SmallRunIsDeterministicAndSane) {
  DemoSpec spec;
  spec.steps = 300000;
  spec.table_points = 1024;
  spec.grid_step = 0.01;
  const auto a = run_demo(spec, 3);
  const auto b = run_demo(spec, 3);
  EXPECT_EQ(a.report, b.report);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(a.trace[i].theta1, b.trace[i].theta1);
  EXPECT_EQ(a.report.find_check("mode_switches_off_top")->value, 0.0);
  EXPECT_TRUE(a.report.find_check("marginal_mass")->passed);
  EXPECT_GE(a.report.find_check("mode_switches_at_top")->value, 1.0);
  EXPECT_DOUBLE_EQ(a.ladder.betamax(), 256.0);
  for (const auto& row : a.trace) {
    EXPECT_NEAR(std::abs(row.signed_log), std::log(256.0 / row.beta), 1e-12);
    if (row.rung != a.ladder.top()) EXPECT_EQ(row.signed_log > 0.0, row.mode == 0);
  }
}
