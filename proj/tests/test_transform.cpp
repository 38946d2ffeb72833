#include <gtest/gtest.h>

#include <cmath>

#include "alps/chain.hpp"
#include "alps/transform.hpp"

using namespace alps;

namespace {

Ladder e_squared_ladder() {
  Ladder l;
  l.spacing = Spacing::standard(1.0);
  l.dimension = 4;
  l.betas = {1.0, std::exp(1.0), std::exp(2.0)};
  l.effective = l.betas;
  return l;
}

MixtureTarget two_modes(int d, double w1 = 0.5) {
  return MixtureTarget{{{1.0, 1.0, w1, 0.0}, {1.0, 2.0, 1.0 - w1, 0.0}}, d};
}

}  // namespace

TEST(Transform, HValues) {
  const auto l = e_squared_ladder();
  EXPECT_DOUBLE_EQ(h_transform_value(l.betamax(), l), 2.0);
  EXPECT_DOUBLE_EQ(h_transform_value(-1.0, l), -1.0);
  EXPECT_NEAR(h_transform_value(std::exp(1.0), l), 1.5, 1e-15);
  EXPECT_THROW(h_transform_value(0.5, l), std::domain_error);
}

TEST(Transform, ZValues) {
  EXPECT_DOUBLE_EQ(z_transform_value(2.0), 0.0);
  EXPECT_DOUBLE_EQ(z_transform_value(1.0), 1.0);
  EXPECT_DOUBLE_EQ(z_transform_value(-1.0), -1.0);
  EXPECT_DOUBLE_EQ(z_transform_value(-1.25), -0.75);
}

TEST(Transform, WValues) {
  const auto c = make_skew_constants(0.4, 0.5, 0.8);
  EXPECT_DOUBLE_EQ(w_transform_value(1.0, c), c.wmax);
  EXPECT_DOUBLE_EQ(w_transform_value(-1.0, c), c.wmin);
  EXPECT_DOUBLE_EQ(w_transform_value(0.0, c), 0.0);
}

TEST(Transform, InversesRecoverX) {
  const auto target = two_modes(64);
  const auto l = build_ladder(64, 64.0, Spacing::standard());
  const auto c = skew_constants(target, 2.38);
  for (int mode = 0; mode < 2; ++mode)
    for (double b : l.betas) {
      const double x = mode == 0 ? b : -b;
      const double w = w_transform_value(z_transform_value(h_transform_value(x, l)), c);
      const double back = h_inverse_value(z_inverse_value(w_inverse_value(w, c), mode == 0), l);
      EXPECT_NEAR(back, x, 1e-10 * std::abs(x));
    }
}

TEST(Transform, WTableEndpoints) {
  const auto target = two_modes(64, 0.3);
  const auto l = build_ladder(64, 64.0, Spacing::standard());
  const auto c = skew_constants(target, 2.38);
  const auto table = w_table(l, c);
  EXPECT_DOUBLE_EQ(table[0].front(), c.wmax);
  EXPECT_DOUBLE_EQ(table[1].front(), c.wmin);
  EXPECT_EQ(table[0].back(), 0.0);
  EXPECT_EQ(table[1].back(), 0.0);
  for (std::size_t i = 1; i < l.betas.size(); ++i) {
    EXPECT_LT(table[0][i], table[0][i - 1]);
    EXPECT_GT(table[1][i], table[1][i - 1]);
  }
}

TEST(Transform, PathStructureOnChainTrace) {
  const auto target = two_modes(100, 0.6);
  SimConfig cfg{target, build_ladder(100, 100.0, Spacing::standard()), 50000};
  const auto trace = run(cfg, 11);
  const auto c = skew_constants(target, 2.38);
  const auto x = poissonize(trace, cfg.ladder);
  const auto h = to_H(x, cfg.ladder);
  const auto z = to_Z(h);
  const auto w = to_W(z, c);
  for (const auto* p : {&x, &h, &z, &w}) EXPECT_NO_THROW(check_stage_domain(*p, cfg.ladder, c));
  ASSERT_EQ(w.size(), trace.records.size() + 1);
  int zeros = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const auto& r = trace.records[i - 1];
    if (r.rung == cfg.ladder.top()) {
      EXPECT_EQ(w.values[i], 0.0);
      ++zeros;
    } else {
      EXPECT_EQ(w.values[i] > 0.0, r.mode == 0) << i;
      EXPECT_NE(w.values[i], 0.0);
    }
  }
  EXPECT_GT(zeros, 0);
  const double hm = cfg.ladder.h_max();
  EXPECT_NEAR(w.time_scale, 100.0 * hm * hm, 1e-9 * w.time_scale);
  EXPECT_NEAR(w.times.back() * w.time_scale, x.times.back() * 100.0, 1e-6);
}

TEST(Transform, StageOrderEnforced) {
  TransformedPath p;
  p.stage = Stage::H;
  p.times = {0.0};
  p.values = {1.5};
  const auto l = e_squared_ladder();
  EXPECT_THROW(to_H(p, l), std::invalid_argument);
  EXPECT_THROW(to_W(p, make_skew_constants(0.5, 0.5, 0.5)), std::invalid_argument);
}

TEST(Transform, DomainCheckFlagsBadValue) {
  TransformedPath p;
  p.stage = Stage::Z;
  p.times = {0.0, 1.0};
  p.values = {0.5, 1.5};
  EXPECT_THROW(check_stage_domain(p, e_squared_ladder(), make_skew_constants(0.5, 0.5, 0.5)), std::logic_error);
}

TEST(Transform, ValueAtIsRightContinuous) {
  TransformedPath p;
  p.times = {0.0, 1.0, 2.0};
  p.values = {3.0, 4.0, 5.0};
  EXPECT_EQ(p.value_at(-1.0), 3.0);
  EXPECT_EQ(p.value_at(0.999), 3.0);
  EXPECT_EQ(p.value_at(1.0), 4.0);
  EXPECT_EQ(p.value_at(10.0), 5.0);
}
