#include "alps/demo.hpp"

#include <boost/math/distributions/skew_normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "alps/chain.hpp"
#include "alps/numerics.hpp"
#include "alps/stats.hpp"

namespace alps {

double SkewNormalMode::log_pdf(double x) const {
  const double z = (x - location) / scale;
  return std::log(2.0 / scale) - 0.5 * z * z - 0.91893853320467274178 + log_normal_cdf(shape * z);
}

TemperedTable::TemperedTable(const SkewNormalMode& mode, double beta, int points, double cutoff) {
  if (points < 16) throw std::invalid_argument("table needs at least 16 points");
  // Coarse scan to find the region that carries the mass.
  const int scan = 40001;
  const double a = mode.location - 40.0 * mode.scale;
  const double b = mode.location + 40.0 * mode.scale;
  const double dx = (b - a) / (scan - 1);
  std::vector<double> lg(scan);
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan; ++i) {
    lg[static_cast<std::size_t>(i)] = mode.log_pdf(a + dx * i);
    top = std::max(top, lg[static_cast<std::size_t>(i)]);
  }
  int first = scan - 1, last = 0;
  for (int i = 0; i < scan; ++i)
    if (beta * (lg[static_cast<std::size_t>(i)] - top) >= -cutoff) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  lo_ = a + dx * std::max(first - 1, 0);
  hi_ = a + dx * std::min(last + 1, scan - 1);

  grid_.resize(static_cast<std::size_t>(points));
  cdf_.assign(static_cast<std::size_t>(points), 0.0);
  const double step = (hi_ - lo_) / (points - 1);
  double prev = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo_ + step * i;
    grid_[static_cast<std::size_t>(i)] = x;
    const double f = std::exp(beta * (mode.log_pdf(x) - top));
    if (i > 0) cdf_[static_cast<std::size_t>(i)] = cdf_[static_cast<std::size_t>(i) - 1] + 0.5 * (prev + f) * step;
    prev = f;
  }
  const double total = cdf_.back();
  for (double& c : cdf_) c /= total;

  const auto integrand = [&](double x) { return std::exp(beta * (mode.log_pdf(x) - top)); };
  log_norm_ = std::log(integrate(integrand, lo_, hi_, 1e-10)) + beta * top;
}

double TemperedTable::sample(Engine& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cdf_.begin(), 1,
                                                                     static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
  const double c0 = cdf_[i - 1], c1 = cdf_[i];
  const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
  return grid_[i - 1] + frac * (grid_[i] - grid_[i - 1]);
}

TabulatedKernel::TabulatedKernel(const std::vector<SkewNormalMode>& modes, const Ladder& ladder, int points)
    : modes_(modes),
      ladder_(&ladder),
      x_(static_cast<std::size_t>(ladder.dimension)),
      sum_log_(modes.size(), 0.0) {
  tables_.resize(modes_.size());
  for (std::size_t j = 0; j < modes_.size(); ++j)
    for (double beta : ladder.betas) tables_[j].emplace_back(modes_[j], beta, points);
}

void TabulatedKernel::resample(int mode, int rung, Engine& rng) {
  const auto& table = tables_[static_cast<std::size_t>(mode)][static_cast<std::size_t>(rung)];
  for (double& xi : x_) xi = table.sample(rng);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < modes_.size(); ++j) {
    double s = 0.0, dist = 0.0;
    for (double xi : x_) {
      s += modes_[j].log_pdf(xi);
      dist += (xi - modes_[j].location) * (xi - modes_[j].location);
    }
    sum_log_[j] = s;
    if (dist < best) {
      best = dist;
      allocated_ = static_cast<int>(j);
    }
  }
}

double TabulatedKernel::log_accept(int mode, int from, int to) const {
  const auto j = static_cast<std::size_t>(mode);
  const double bf = ladder_->betas[static_cast<std::size_t>(from)];
  const double bt = ladder_->betas[static_cast<std::size_t>(to)];
  const double d = static_cast<double>(x_.size());
  return (bt - bf) * sum_log_[j] -
         d * (tables_[j][static_cast<std::size_t>(to)].log_norm() -
              tables_[j][static_cast<std::size_t>(from)].log_norm());
}

double demo_marginal(const DemoSpec& spec, double x) {
  double s = 0.0;
  for (const auto& m : spec.modes) s += m.weight * std::exp(m.log_pdf(x));
  return s;
}

double simpson(const std::vector<double>& y, double step) {
  if (y.size() < 3 || y.size() % 2 == 0) throw std::invalid_argument("Simpson needs an odd number of points >= 3");
  double s = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return s * step / 3.0;
}

DemoResult run_demo(const DemoSpec& spec, std::uint64_t seed) {
  if (spec.modes.size() != 2) throw std::invalid_argument("the demo expects two modes");
  if (spec.steps < 1 || spec.batches < 2) throw std::invalid_argument("demo needs steps and batches");
  DemoResult out;
  out.ladder = build_ladder(spec.dimension, spec.betamax, Spacing::standard(spec.ell0));
  const Ladder& ladder = out.ladder;
  const int top = ladder.top();

  const auto n_grid = static_cast<std::size_t>(std::llround((spec.grid_hi - spec.grid_lo) / spec.grid_step)) + 1;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double x = spec.grid_lo + spec.grid_step * static_cast<double>(i);
    out.grid.push_back(x);
    out.density.push_back(demo_marginal(spec, x));
  }
  const double mass = n_grid % 2 == 1 ? simpson(out.density, spec.grid_step)
                                      : std::numeric_limits<double>::quiet_NaN();

  TabulatedKernel kernel(spec.modes, ladder, spec.table_points);
  const std::vector<double> cumulative = cumulative_weights({spec.modes[0].weight, spec.modes[1].weight});
  Engine rng = make_engine(seed, Stream::Chain);
  Engine clock = make_engine(seed, Stream::Clock);
  std::exponential_distribution<double> arrival(static_cast<double>(spec.dimension));
  ChainState state{draw_mode(cumulative, rng), 0};
  double t = 0.0;

  std::vector<double> batch_visits(static_cast<std::size_t>(spec.batches), 0.0);
  std::vector<double> batch_mode1(static_cast<std::size_t>(spec.batches), 0.0);
  std::int64_t target_visits = 0, target_mode1 = 0, off_top_switches = 0, switches = 0, accepted = 0;
  std::int64_t target_index = 0;
  for (std::int64_t n = 0; n < spec.steps; ++n) {
    const ChainState before = state;
    const StepInfo info = step(state, ladder, cumulative, kernel, rng);
    t += arrival(clock);
    if (info.accepted) ++accepted;
    if (state.mode != before.mode) {
      ++switches;
      if (before.rung != top) ++off_top_switches;
    }
    if (before.rung == 0) {
      const auto b = static_cast<std::size_t>(n * spec.batches / spec.steps);
      ++target_visits;
      batch_visits[b] += 1.0;
      if (state.mode == 0) {
        ++target_mode1;
        batch_mode1[b] += 1.0;
      }
      if (target_index++ % 5 == 0) out.theta1_at_target.push_back(kernel.coordinates()[0]);
    }
    if (n % spec.export_every == 0) {
      const double beta = ladder.betas[static_cast<std::size_t>(state.rung)];
      const double sgn = state.mode == 0 ? 1.0 : -1.0;
      out.trace.push_back({n, t, state.mode, state.rung, beta, kernel.coordinates()[0],
                           sgn * std::log(ladder.betamax() / beta)});
    }
  }

  std::vector<double> batch_share;
  for (std::size_t b = 0; b < batch_visits.size(); ++b)
    if (batch_visits[b] > 0.0) batch_share.push_back(batch_mode1[b] / batch_visits[b]);
  const MeanSe share = mean_se(batch_share);

  boost::math::skew_normal_distribution<double> sn1(spec.modes[0].location, spec.modes[0].scale, spec.modes[0].shape);
  boost::math::skew_normal_distribution<double> sn2(spec.modes[1].location, spec.modes[1].scale, spec.modes[1].shape);
  const auto mixture_cdf = [&](double x) {
    return spec.modes[0].weight * boost::math::cdf(sn1, x) + spec.modes[1].weight * boost::math::cdf(sn2, x);
  };
  const KsResult ks = ks_one_sample(out.theta1_at_target, mixture_cdf);

  auto& rep = out.report;
  rep.kind = "demo";
  rep.seed = seed;
  const double w1 = spec.modes[0].weight;
  rep.add_estimate("rungs", static_cast<double>(top + 1), 0.0, 1);
  rep.add_estimate("mode1_share_at_target", share.mean, share.std_error, share.n);
  rep.add_estimate("target_visits", static_cast<double>(target_visits), 0.0, 1);
  rep.add_estimate("mode_switches", static_cast<double>(switches), 0.0, 1);
  rep.add_estimate("acceptance_rate", static_cast<double>(accepted) / static_cast<double>(spec.steps), 0.0, 1);
  rep.add_estimate("theta1_ks_at_target", ks.statistic, 0.0, static_cast<std::int64_t>(out.theta1_at_target.size()));
  rep.add_estimate("marginal_mass", mass, 0.0, 1);
  rep.add_check("mode1_share_at_target", static_cast<double>(target_mode1) / static_cast<double>(std::max<std::int64_t>(target_visits, 1)),
                w1 - 0.03, w1 + 0.03);
  rep.add_check("mode_switches_off_top", static_cast<double>(off_top_switches), 0.0, 0.0);
  rep.add_check("mode_switches_at_top", static_cast<double>(switches), 1.0, std::numeric_limits<double>::max());
  rep.add_check("marginal_mass", mass, 1.0 - 1e-6, 1.0 + 1e-6);
  rep.add_check("theta1_ks_at_target", ks.statistic, 0.0, 0.05);
  return out;
}

}  // namespace alps
