#include <gtest/gtest.h>

#include <cmath>

#include "alps/harness.hpp"

using namespace alps;

namespace {

MixtureTarget two_modes(double w1, double r1, double r2, int d = 16) {
  return MixtureTarget{{{1.0, r1, w1, 0.0}, {1.0, r2, 1.0 - w1, 0.0}}, d};
}

ExperimentBase base(double w1, double r1, double r2) {
  ExperimentBase b;
  b.target = two_modes(w1, r1, r2);
  b.spacing = Spacing::standard();
  return b;
}

}  // namespace

TEST(RoundTrips, NeverReachesTop) {
  RoundTripScanner s(3);
  for (int i = 0; i < 10; ++i) s.visit(i, i, i % 3);
  EXPECT_EQ(s.count(), 0);
}

TEST(RoundTrips, SyntheticFixture) {
  // 0 1 2 3 2 1 0 1 0: one trip from index 0 to 6, then a partial.
  const std::vector<int> rungs{0, 1, 2, 3, 2, 1, 0, 1, 0};
  RoundTripScanner s(3);
  for (std::size_t i = 0; i < rungs.size(); ++i) s.visit(static_cast<std::int64_t>(i), 0.5 * i, rungs[i]);
  ASSERT_EQ(s.count(), 1);
  const auto& t = s.trips().front();
  EXPECT_EQ(t.start, 0);
  EXPECT_EQ(t.peak, 3);
  EXPECT_EQ(t.end, 6);
  EXPECT_EQ(t.steps(), 6);
  EXPECT_DOUBLE_EQ(t.duration(), 3.0);
}

TEST(RoundTrips, TripsTileTheRun) {
  const auto b = base(0.5, 2.0, 2.0);
  SimConfig cfg{b.target_for(32), b.ladder_for(32), 200000};
  const auto trace = run(cfg, 3);
  const auto trips = round_trips(trace, cfg.ladder.top());
  ASSERT_GT(trips.size(), 10u);
  for (std::size_t i = 1; i < trips.size(); ++i) EXPECT_EQ(trips[i].start, trips[i - 1].end);
}

TEST(Excursions, CounterFixture) {
  ExcursionCounter c(0.5);
  // Leading run ignored; then +0.6 (counted), -0.2 (below level), -0.7 (counted), trailing open run.
  for (double w : {0.3, 0.4, 0.0, 0.2, 0.6, 0.1, 0.0, -0.2, 0.0, -0.7, 0.0, 0.9}) c(w);
  const auto& s = c.stats();
  EXPECT_EQ(s.all_excursions, 3);
  EXPECT_EQ(s.all_positive, 1);
  EXPECT_EQ(s.excursions, 2);
  EXPECT_EQ(s.positive, 1);
  EXPECT_DOUBLE_EQ(s.fraction_positive(), 0.5);
}

TEST(Excursions, RequiresWStage) {
  TransformedPath p;
  p.stage = Stage::Z;
  p.values = {0.0};
  p.times = {0.0};
  EXPECT_THROW(excursion_statistics(p), std::logic_error);
}

TEST(Excursions, SymmetricAndEqualSkewCases) {
  for (double w1 : {0.5, 0.7}) {
    ExcursionExperiment e{base(w1, 2.0, 2.0), 2'000'000, 4, 0.5};
    e.base.align_top = true;
    const auto r = run_excursions(e, 5);
    EXPECT_DOUBLE_EQ(r.constants.alpha, w1);
    ASSERT_GT(r.stats.excursions, 500);
    EXPECT_LT(std::abs(r.stats.fraction_positive() - w1), 3.5 * r.stats.std_error()) << w1;
  }
}

TEST(Acceptance, BottomDownIsNeverCountedAsInRange) {
  AcceptanceExperiment e{base(0.5, 1.0, 2.0), 200000, 2};
  e.base.target.dimension = 64;
  const auto r = run_acceptance(e, 1);
  EXPECT_EQ(r.tally.cell(0, 0).down_accepted, 0);
  EXPECT_EQ(r.tally.cell(1, 0).down_accepted, 0);
  EXPECT_GT(r.tally.cell(0, 0).down_proposed, 0);
  for (const auto& row : r.profile.rows)
    if (row.rung == 0) EXPECT_EQ(row.proposals, row.counts.up_proposed);
}

TEST(Acceptance, ApproachesLimitWithDimension) {
  // Pooled interior error should shrink from d = 100 to d = 10^4.
  double err[2];
  int idx = 0;
  for (int d : {100, 10000}) {
    AcceptanceExperiment e{base(0.5, 1.0, 1.0), 3'000'000, 1};
    e.base.align_top = true;
    e.base.target.dimension = d;
    const auto r = run_acceptance(e, 7);
    const double predicted = limiting_acceptance(1.0, 2.38);
    err[idx++] = std::abs(r.profile.pooled_rate[0] - predicted) + std::abs(r.profile.pooled_rate[1] - predicted);
  }
  EXPECT_LT(err[1], err[0]);
  EXPECT_LT(err[1], 0.02);
}

TEST(Complexity, RatioBetweenTwoDimensions) {
  ComplexitySpec spec{base(0.5, 2.0, 2.0), {64, 256}, 4, 300.0};
  const auto res = complexity_scan(spec, 2);
  ASSERT_EQ(res.rows.size(), 2u);
  for (const auto& row : res.rows) EXPECT_FALSE(row.censored);
  const auto pred = [](double d) { return d * std::log(d) * std::log(d); };
  const double observed = res.rows[1].mean_steps / res.rows[0].mean_steps;
  EXPECT_NEAR(observed / (pred(256) / pred(64)), 1.0, 0.25);
}

TEST(Complexity, DoublingBetamax) {
  ComplexitySpec spec{base(0.5, 2.0, 2.0), {}, 4, 300.0};
  const int d = 256;
  const auto r = betamax_doubling(spec, d, 4);
  const double predicted = std::pow(1.0 + std::log(2.0) / std::log(static_cast<double>(d)), 2);
  EXPECT_NEAR(r.ratio() / predicted, 1.0, 0.2);
}

TEST(WeakConvergence, TimeZeroIsExact) {
  WeakConvergenceSpec spec{base(0.5, 1.0, 2.0), {16}, {0.0, 0.5}, 200, 1e-3};
  const auto r = weak_convergence_test(spec, 3);
  EXPECT_EQ(r.ks(16, 0.0), 0.0);
  EXPECT_GT(r.ks(16, 0.5), 0.0);
}

TEST(WeakConvergence, ConstantsMismatchThrows) {
  WeakConvergenceSpec spec{base(0.5, 1.0, 2.0), {16}, {0.5}, 50, 1e-3};
  auto c = skew_constants(spec.base.target, 2.38);
  c.alpha += 0.01;
  spec.constants = c;
  EXPECT_THROW(weak_convergence_test(spec, 1), std::invalid_argument);
  EXPECT_NO_THROW(require_matching_constants(skew_constants(spec.base.target, 2.38),
                                             skew_constants(spec.base.target, 2.38)));
}

TEST(WeakConvergence, MarginalsStartAtWmax) {
  const auto target = two_modes(0.5, 1.0, 2.0, 64);
  const auto ladder = build_ladder(64, 64.0, Spacing::standard());
  const auto c = skew_constants(target, 2.38);
  const auto m = alps_w_marginals(target, ladder, c, {0.0, 1.0}, 50, 9);
  for (double w : m[0]) EXPECT_DOUBLE_EQ(w, c.wmax);
  for (double w : m[1]) {
    EXPECT_GE(w, c.wmin - 1e-12);
    EXPECT_LE(w, c.wmax + 1e-12);
  }
  EXPECT_EQ(m, alps_w_marginals(target, ladder, c, {0.0, 1.0}, 50, 9, Execution::Serial));
}

TEST(CrossValidation, KernelsAgree) {
  CrossValidationSpec spec{base(0.4, 1.0, 2.0), 1000, 200};
  spec.base.target.dimension = 16;
  const auto r = cross_validate(spec, 6);
  EXPECT_GT(r.occupation.p_value, 0.001);
  EXPECT_GT(r.acceptance.p_value, 0.001);
  EXPECT_GT(r.occupation.dof, 0);
}

TEST(Occupation, Fractions) {
  OccupationCounts c{30, 60, 10};
  EXPECT_DOUBLE_EQ(c.raw_positive(), 0.3);
  EXPECT_DOUBLE_EQ(c.off_junction_positive(), 30.0 / 90.0);
  c.merge({10, 0, 0});
  EXPECT_EQ(c.positive, 40);
}
