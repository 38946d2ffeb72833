#include "alps/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "alps/skew_bm.hpp"

namespace alps {

AcceptanceTally::AcceptanceTally(int modes, int rungs)
    : modes_(modes), rungs_(rungs), cells_(static_cast<std::size_t>(modes) * static_cast<std::size_t>(rungs)) {
  if (modes < 1 || rungs < 1) throw std::invalid_argument("empty acceptance tally");
}

void AcceptanceTally::operator()(const TraceRecord& rec) {
  const int from = rec.from_rung();
  auto& c = cells_[static_cast<std::size_t>(rec.mode) * static_cast<std::size_t>(rungs_) +
                   static_cast<std::size_t>(from)];
  if (rec.direction > 0) {
    ++c.up_proposed;
    if (rec.accepted) ++c.up_accepted;
  } else {
    ++c.down_proposed;
    if (rec.accepted) ++c.down_accepted;
  }
}

void AcceptanceTally::merge(const AcceptanceTally& other) {
  if (other.modes_ != modes_ || other.rungs_ != rungs_)
    throw std::invalid_argument("cannot merge tallies of different shapes");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    cells_[i].up_proposed += other.cells_[i].up_proposed;
    cells_[i].up_accepted += other.cells_[i].up_accepted;
    cells_[i].down_proposed += other.cells_[i].down_proposed;
    cells_[i].down_accepted += other.cells_[i].down_accepted;
  }
}

AcceptanceProfile acceptance_profile(const AcceptanceTally& tally, const Ladder& ladder,
                                     const MixtureTarget& target, std::int64_t min_proposals,
                                     SkewConvention convention) {
  const int top = ladder.top();
  if (tally.rungs() != top + 1 || tally.modes() != target.mode_count())
    throw std::invalid_argument("tally shape does not match the ladder and target");
  AcceptanceProfile out;
  out.pooled_rate.assign(static_cast<std::size_t>(tally.modes()), 0.0);
  out.pooled_proposals.assign(static_cast<std::size_t>(tally.modes()), 0);
  std::vector<std::int64_t> pooled_acc(static_cast<std::size_t>(tally.modes()), 0);
  for (int j = 0; j < tally.modes(); ++j) {
    const double predicted =
        limiting_acceptance(target.modes[static_cast<std::size_t>(j)].r, ladder.spacing.ell0, convention);
    for (int i = 0; i <= top; ++i) {
      AcceptanceRow row;
      row.mode = j;
      row.rung = i;
      row.counts = tally.cell(j, i);
      if (i < top) {
        row.proposals += row.counts.up_proposed;
        row.accepted += row.counts.up_accepted;
      }
      if (i > 0) {
        row.proposals += row.counts.down_proposed;
        row.accepted += row.counts.down_accepted;
      }
      row.rate = row.proposals > 0
                     ? static_cast<double>(row.accepted) / static_cast<double>(row.proposals)
                     : 0.0;
      row.predicted = predicted;
      row.z = binomial_z(row.accepted, row.proposals, predicted);
      row.interior = i >= 1 && i <= top - 1;
      row.near_clamp = ladder.clamped && i == top - 1;
      row.sufficient = row.proposals >= min_proposals;
      if (row.interior && !row.near_clamp) {
        out.pooled_proposals[static_cast<std::size_t>(j)] += row.proposals;
        pooled_acc[static_cast<std::size_t>(j)] += row.accepted;
      }
      out.rows.push_back(row);
    }
    const auto n = out.pooled_proposals[static_cast<std::size_t>(j)];
    out.pooled_rate[static_cast<std::size_t>(j)] =
        n > 0 ? static_cast<double>(pooled_acc[static_cast<std::size_t>(j)]) / static_cast<double>(n) : 0.0;
  }
  return out;
}

AcceptanceProfile acceptance_profile(const Trace& trace, const Ladder& ladder,
                                     const MixtureTarget& target, std::int64_t min_proposals,
                                     SkewConvention convention) {
  AcceptanceTally tally(target.mode_count(), ladder.top() + 1);
  for (const auto& r : trace.records) tally(r);
  return acceptance_profile(tally, ladder, target, min_proposals, convention);
}

void RoundTripScanner::visit(std::int64_t index, double time, int rung) {
  switch (phase_) {
    case 0:
      if (rung == 0) {
        current_.start = index;
        current_.start_time = time;
        phase_ = 1;
      }
      break;
    case 1:
      if (rung == top_) {
        current_.peak = index;
        phase_ = 2;
      }
      break;
    default:
      if (rung == 0) {
        current_.end = index;
        current_.end_time = time;
        trips_.push_back(current_);
        current_ = RoundTrip{};
        current_.start = index;
        current_.start_time = time;
        phase_ = 1;
      }
  }
}

std::vector<RoundTrip> round_trips(const Trace& trace, int top) {
  RoundTripScanner scan(top);
  scan.visit(0, 0.0, trace.initial.rung);
  for (const auto& r : trace.records) scan(r);
  return scan.trips();
}

double ExcursionStats::std_error() const {
  if (excursions == 0) return 0.0;
  const double p = fraction_positive();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(excursions));
}

void ExcursionStats::merge(const ExcursionStats& other) {
  excursions += other.excursions;
  positive += other.positive;
  all_excursions += other.all_excursions;
  all_positive += other.all_positive;
}

void ExcursionCounter::operator()(double w) {
  if (w == 0.0) {
    if (seen_zero_ && sign_ != 0) {
      ++stats_.all_excursions;
      if (sign_ > 0) ++stats_.all_positive;
      if (height_ >= stats_.level) {
        ++stats_.excursions;
        if (sign_ > 0) ++stats_.positive;
      }
    }
    seen_zero_ = true;
    sign_ = 0;
    height_ = 0.0;
    return;
  }
  if (!seen_zero_) return;
  if (sign_ == 0) sign_ = w > 0.0 ? 1 : -1;
  height_ = std::max(height_, std::abs(w));
}

ExcursionStats excursion_statistics(const TransformedPath& path_w, double level) {
  if (path_w.stage != Stage::W) throw std::logic_error("excursion statistics need a W-stage path");
  ExcursionCounter counter(level);
  for (double w : path_w.values) counter(w);
  return counter.stats();
}

double OccupationCounts::raw_positive() const {
  const auto n = positive + negative + zero;
  return n > 0 ? static_cast<double>(positive) / static_cast<double>(n) : 0.0;
}

double OccupationCounts::off_junction_positive() const {
  const auto n = positive + negative;
  return n > 0 ? static_cast<double>(positive) / static_cast<double>(n) : 0.0;
}

void OccupationCounts::merge(const OccupationCounts& other) {
  positive += other.positive;
  negative += other.negative;
  zero += other.zero;
}

Ladder ExperimentBase::ladder_for(int d) const {
  return build_ladder(d, betamax_factor * static_cast<double>(d), spacing, align_top);
}

MixtureTarget ExperimentBase::target_for(int d) const {
  MixtureTarget t = target;
  t.dimension = d;
  return t;
}

AcceptanceExperimentResult run_acceptance(const AcceptanceExperiment& spec, std::uint64_t seed,
                                          Execution policy) {
  const int d = spec.base.target.dimension;
  AcceptanceExperimentResult out;
  out.ladder = spec.base.ladder_for(d);
  SimConfig cfg;
  cfg.target = spec.base.target_for(d);
  cfg.target.validate();
  cfg.ladder = out.ladder;
  cfg.steps = spec.steps;
  cfg.poisson_clock = false;
  const int modes = cfg.target.mode_count();
  std::vector<AcceptanceTally> tallies(spec.replicas, AcceptanceTally(modes, out.ladder.top() + 1));
  for_each_index(spec.replicas, policy, [&](std::size_t i) {
    run_streaming(cfg, stream_seed(seed, i), tallies[i]);
  });
  out.tally = AcceptanceTally(modes, out.ladder.top() + 1);
  for (const auto& t : tallies) out.tally.merge(t);
  out.profile = acceptance_profile(out.tally, out.ladder, cfg.target, spec.min_proposals,
                                   spec.base.convention);
  return out;
}

double ComplexityResult::spread(bool per_d) const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : rows) {
    if (r.censored) continue;
    const double v = per_d ? r.per_d : r.per_d_log2;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

bool ComplexityResult::decreasing(bool per_d) const {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = per_d ? rows[i - 1].per_d : rows[i - 1].per_d_log2;
    const double b = per_d ? rows[i].per_d : rows[i].per_d_log2;
    if (!(b < a)) return false;
  }
  return true;
}

namespace {

ComplexityRow complexity_row(const ComplexitySpec& spec, int d, double betamax_factor,
                             std::uint64_t seed, Execution policy, std::int64_t min_trips) {
  ExperimentBase base = spec.base;
  base.betamax_factor = betamax_factor;
  SimConfig cfg;
  cfg.target = base.target_for(d);
  cfg.target.validate();
  cfg.ladder = base.ladder_for(d);
  cfg.full_coordinate = spec.full_coordinate;
  cfg.poisson_clock = false;
  const double k1 = static_cast<double>(cfg.ladder.top() + 1);
  cfg.steps = static_cast<std::int64_t>(std::ceil(spec.round_trip_budget * k1 * k1));

  struct Partial {
    std::int64_t trips = 0;
    std::int64_t trip_steps = 0;
  };
  std::vector<Partial> parts(spec.replicas);
  for_each_index(spec.replicas, policy, [&](std::size_t i) {
    RoundTripScanner scan(cfg.ladder.top());
    scan.visit(0, 0.0, 0);
    SimConfig local = cfg;
    local.initial = ChainState{0, 0};
    run_streaming(local, stream_seed(seed, i), scan);
    for (const auto& t : scan.trips()) parts[i].trip_steps += t.steps();
    parts[i].trips = scan.count();
  });

  ComplexityRow row;
  row.d = d;
  row.betamax = cfg.ladder.betamax();
  row.rungs = cfg.ladder.top() + 1;
  row.steps = cfg.steps * static_cast<std::int64_t>(spec.replicas);
  std::int64_t total_steps = 0;
  std::vector<double> replica_means;
  for (const auto& p : parts) {
    row.trips += p.trips;
    total_steps += p.trip_steps;
    if (p.trips > 0) replica_means.push_back(static_cast<double>(p.trip_steps) / static_cast<double>(p.trips));
  }
  row.censored = row.trips < min_trips;
  if (row.trips > 0) row.mean_steps = static_cast<double>(total_steps) / static_cast<double>(row.trips);
  row.std_error = mean_se(replica_means).std_error;
  const double dd = static_cast<double>(d);
  const double lg = std::log(dd);
  row.mean_time = row.mean_steps / dd;
  row.per_d = row.mean_steps / dd;
  row.per_d_log2 = row.mean_steps / (dd * lg * lg);
  return row;
}

}  // namespace

ComplexityResult complexity_scan(const ComplexitySpec& spec, std::uint64_t seed, Execution policy,
                                 std::int64_t min_trips) {
  ComplexityResult out;
  for (std::size_t i = 0; i < spec.dims.size(); ++i)
    out.rows.push_back(complexity_row(spec, spec.dims[i], spec.base.betamax_factor,
                                      stream_seed(seed, i), policy, min_trips));
  return out;
}

DoublingResult betamax_doubling(const ComplexitySpec& spec, int d, std::uint64_t seed,
                                Execution policy) {
  DoublingResult out;
  out.base = complexity_row(spec, d, spec.base.betamax_factor, stream_seed(seed, 0), policy, 1);
  out.doubled = complexity_row(spec, d, 2.0 * spec.base.betamax_factor, stream_seed(seed, 1), policy, 1);
  return out;
}

ExcursionExperimentResult run_excursions(const ExcursionExperiment& spec, std::uint64_t seed,
                                         Execution policy) {
  const int d = spec.base.target.dimension;
  ExcursionExperimentResult out;
  SimConfig cfg;
  cfg.target = spec.base.target_for(d);
  cfg.target.validate();
  cfg.ladder = spec.base.ladder_for(d);
  cfg.steps = spec.steps;
  cfg.poisson_clock = false;
  out.ladder = cfg.ladder;
  out.constants = skew_constants(cfg.target, cfg.ladder.spacing.ell0, spec.base.convention);
  const auto table = w_table(cfg.ladder, out.constants);
  const double level =
      spec.level_fraction * std::min(out.constants.wmax, std::abs(out.constants.wmin));

  struct Partial {
    ExcursionStats stats;
    OccupationCounts occ;
  };
  std::vector<Partial> parts(spec.replicas);
  for_each_index(spec.replicas, policy, [&](std::size_t i) {
    ExcursionCounter counter(level);
    OccupationCounts occ;
    const auto seed_i = stream_seed(seed, i);
    Engine probe = make_engine(seed_i, Stream::Chain);
    const ChainState init = initial_state(cfg, probe);
    counter(table[static_cast<std::size_t>(init.mode)][static_cast<std::size_t>(init.rung)]);
    run_streaming(cfg, seed_i, [&](const TraceRecord& r) {
      const double w = table[static_cast<std::size_t>(r.mode)][static_cast<std::size_t>(r.rung)];
      counter(w);
      if (w > 0.0) ++occ.positive;
      else if (w < 0.0) ++occ.negative;
      else ++occ.zero;
    });
    parts[i] = {counter.stats(), occ};
  });
  out.stats.level = level;
  for (const auto& p : parts) {
    out.stats.merge(p.stats);
    out.occupation.merge(p.occ);
    out.replica_raw.push_back(p.occ.raw_positive());
    out.replica_off_junction.push_back(p.occ.off_junction_positive());
  }
  return out;
}

void require_matching_constants(const SkewConstants& given, const SkewConstants& implied) {
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
  if (!close(given.s1, implied.s1) || !close(given.s2, implied.s2) || !close(given.w1, implied.w1) ||
      !close(given.alpha, implied.alpha) || !close(given.wmin, implied.wmin) ||
      !close(given.wmax, implied.wmax))
    throw std::invalid_argument("skew constants do not match the target's weights and exponents");
}

std::vector<std::vector<double>> alps_w_marginals(const MixtureTarget& target, const Ladder& ladder,
                                                  const SkewConstants& constants,
                                                  const std::vector<double>& t_values,
                                                  std::size_t replicas, std::uint64_t master,
                                                  Execution policy) {
  if (!std::is_sorted(t_values.begin(), t_values.end()))
    throw std::invalid_argument("t values must be ascending");
  const auto table = w_table(ladder, constants);
  const auto cumulative = cumulative_weights(target.weights());
  const double h = ladder.h_max();
  const double rate = static_cast<double>(ladder.dimension) * h * h;
  std::vector<std::vector<double>> out(t_values.size(), std::vector<double>(replicas));
  for_each_index(replicas, policy, [&](std::size_t i) {
    const auto seed_i = stream_seed(master, i);
    Engine rng = make_engine(seed_i, Stream::Chain);
    Engine clock = make_engine(seed_i, Stream::Clock);
    std::exponential_distribution<double> arrival(rate);
    SufficientStatKernel kernel(target, ladder);
    ChainState state{0, 0};
    double next = arrival(clock);
    for (std::size_t k = 0; k < t_values.size(); ++k) {
      while (next <= t_values[k]) {
        step(state, ladder, cumulative, kernel, rng);
        next += arrival(clock);
      }
      out[k][i] = table[static_cast<std::size_t>(state.mode)][static_cast<std::size_t>(state.rung)];
    }
  });
  return out;
}

double WeakConvergenceResult::ks(int d, double t) const {
  for (const auto& r : rows)
    if (r.d == d && std::abs(r.t - t) < 1e-12) return r.ks;
  throw std::out_of_range("no such (d, t) row");
}

WeakConvergenceResult weak_convergence_test(const WeakConvergenceSpec& spec, std::uint64_t seed,
                                            Execution policy) {
  if (spec.t_values.empty() || spec.dims.empty()) throw std::invalid_argument("need dims and t values");
  WeakConvergenceResult out;
  out.constants = skew_constants(spec.base.target, spec.base.spacing.ell0, spec.base.convention);
  if (spec.constants) require_matching_constants(*spec.constants, out.constants);

  SkewBMConfig ref;
  ref.constants = out.constants;
  ref.dt = spec.reference_dt;
  ref.horizon = spec.t_values.back();
  ref.initial = out.constants.wmax;
  out.warnings = make_lattice(ref).warnings;
  const auto reference = marginal_samples(ref, spec.t_values, spec.replicas, stream_seed(seed, 0), policy);

  for (std::size_t di = 0; di < spec.dims.size(); ++di) {
    const int d = spec.dims[di];
    const MixtureTarget target = spec.base.target_for(d);
    target.validate();
    const Ladder ladder = spec.base.ladder_for(d);
    const auto sample = alps_w_marginals(target, ladder, out.constants, spec.t_values, spec.replicas,
                                         stream_seed(seed, di + 1), policy);
    for (std::size_t k = 0; k < spec.t_values.size(); ++k) {
      const auto ks = ks_two_sample(sample[k], reference[k]);
      out.rows.push_back({d, spec.t_values[k], ks.statistic, ks.p_value});
    }
  }
  return out;
}

CrossValidationResult cross_validate(const CrossValidationSpec& spec, std::uint64_t seed,
                                     Execution policy) {
  const int d = spec.base.target.dimension;
  CrossValidationResult out;
  SimConfig cfg;
  cfg.target = spec.base.target_for(d);
  cfg.target.validate();
  cfg.ladder = spec.base.ladder_for(d);
  cfg.steps = spec.steps;
  cfg.poisson_clock = false;
  cfg.initial = ChainState{0, 0};
  out.ladder = cfg.ladder;
  const int modes = cfg.target.mode_count();
  const int rungs = cfg.ladder.top() + 1;

  const auto run_kind = [&](bool full, std::uint64_t master, AcceptanceTally& tally) {
    SimConfig c = cfg;
    c.full_coordinate = full;
    std::vector<AcceptanceTally> tallies(spec.replicas, AcceptanceTally(modes, rungs));
    std::vector<ChainState> finals(spec.replicas);
    for_each_index(spec.replicas, policy, [&](std::size_t i) {
      // Starting mode alternates so both kernels see the same initial law.
      SimConfig local = c;
      local.initial = ChainState{static_cast<int>(i % static_cast<std::size_t>(modes)), 0};
      finals[i] = run_streaming(local, stream_seed(master, i), tallies[i]);
    });
    tally = AcceptanceTally(modes, rungs);
    for (const auto& t : tallies) tally.merge(t);
    std::vector<double> counts(static_cast<std::size_t>(modes * rungs), 0.0);
    for (const auto& s : finals) counts[static_cast<std::size_t>(s.mode * rungs + s.rung)] += 1.0;
    return counts;
  };

  out.occupation_table.push_back(run_kind(false, stream_seed(seed, 0), out.tally_stat));
  out.occupation_table.push_back(run_kind(true, stream_seed(seed, 1), out.tally_full));
  out.occupation = chi_square_homogeneity(out.occupation_table);

  ChiSquareResult acc;
  const auto add_cell = [&](std::int64_t pa, std::int64_t aa, std::int64_t pb, std::int64_t ab) {
    if (pa == 0 || pb == 0) return;
    const double total = static_cast<double>(pa + pb);
    const double acc_total = static_cast<double>(aa + ab);
    const double rej_total = total - acc_total;
    const double min_expected =
        static_cast<double>(std::min(pa, pb)) * std::min(acc_total, rej_total) / total;
    if (min_expected < 5.0) return;
    const auto r = chi_square_homogeneity({{static_cast<double>(aa), static_cast<double>(pa - aa)},
                                           {static_cast<double>(ab), static_cast<double>(pb - ab)}});
    acc.statistic += r.statistic;
    acc.dof += r.dof;
  };
  for (int j = 0; j < modes; ++j)
    for (int i = 0; i < rungs; ++i) {
      const auto& a = out.tally_stat.cell(j, i);
      const auto& b = out.tally_full.cell(j, i);
      if (i < rungs - 1) add_cell(a.up_proposed, a.up_accepted, b.up_proposed, b.up_accepted);
      if (i > 0) add_cell(a.down_proposed, a.down_accepted, b.down_proposed, b.down_accepted);
    }
  acc.p_value = chi_square_sf(acc.statistic, acc.dof);
  out.acceptance = acc;
  return out;
}

}  // namespace alps
