#include "alps/dispatch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "alps/chain.hpp"
#include "alps/harness.hpp"
#include "alps/io.hpp"
#include "alps/skew_bm.hpp"
#include "alps/transform.hpp"

namespace alps {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<Command> parse_command(const std::string& name) {
  if (name == "simulate") return Command::Simulate;
  if (name == "transform") return Command::Transform;
  if (name == "compare") return Command::Compare;
  if (name == "complexity") return Command::Complexity;
  if (name == "excursions") return Command::Excursions;
  if (name == "appendix-verify") return Command::AppendixVerify;
  if (name == "demo") return Command::Demo;
  return std::nullopt;
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Simulate: return "simulate";
    case Command::Transform: return "transform";
    case Command::Compare: return "compare";
    case Command::Complexity: return "complexity";
    case Command::Excursions: return "excursions";
    case Command::AppendixVerify: return "appendix-verify";
    case Command::Demo: return "demo";
  }
  return "?";
}

namespace {

// Finite so that reports survive a JSON round trip.
constexpr double kInf = std::numeric_limits<double>::max();

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  ExperimentReport& report;

  std::vector<std::string> run_tag() const {
    return {"config_hash=" + report.config_hash + " seed=" + std::to_string(report.seed)};
  }
  fs::path file(const std::string& name) const { return dir / name; }
};

std::size_t replicas_or(const RunConfig& cfg, std::size_t fallback) {
  return cfg.replicas > 0 ? cfg.replicas : fallback;
}

ExperimentBase base_of(const RunConfig& cfg) {
  ExperimentBase b;
  b.target = cfg.target;
  b.spacing = cfg.spacing;
  b.betamax_factor = cfg.betamax_for(cfg.target.dimension) / cfg.target.dimension;
  b.convention = cfg.convention;
  b.align_top = cfg.align_top;
  return b;
}

double binomial_se(double p, std::int64_t n) {
  return n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

void write_acceptance_csv(const Context& ctx, const AcceptanceProfile& profile) {
  CsvWriter csv(ctx.file("acceptance.csv"),
                {"rung", "mode", "proposals", "accepted", "rate", "predicted", "z", "interior",
                 "near_clamp", "sufficient", "down_proposed", "down_accepted"},
                ctx.run_tag());
  for (const auto& r : profile.rows)
    csv.row(r.rung, r.mode + 1, r.proposals, r.accepted, r.rate, r.predicted, r.z, r.interior,
            r.near_clamp, r.sufficient, r.counts.down_proposed, r.counts.down_accepted);
}

void run_simulate(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  SimConfig sc;
  sc.target = cfg.target;
  sc.ladder = cfg.ladder();
  sc.steps = cfg.steps;
  sc.full_coordinate = cfg.full_coordinate;
  const Ladder& ladder = sc.ladder;
  const std::size_t replicas = replicas_or(cfg, 1);
  const int modes = cfg.target.mode_count();
  const int top = ladder.top();

  std::vector<AcceptanceTally> tallies(replicas, AcceptanceTally(modes, top + 1));
  std::vector<std::vector<RoundTrip>> trips(replicas);
  const auto run_one = [&](std::size_t i, CsvWriter* csv) {
    const auto seed_i = stream_seed(cfg.seed, i);
    Engine probe = make_engine(seed_i, Stream::Chain);
    RoundTripScanner scan(top);
    scan.visit(0, 0.0, initial_state(sc, probe).rung);
    run_streaming(sc, seed_i, [&](const TraceRecord& r) {
      tallies[i](r);
      scan(r);
      if (csv != nullptr) csv->row(r.n, r.t, r.mode + 1, r.rung, r.beta, r.direction, r.accepted);
    });
    trips[i] = scan.trips();
  };
  {
    CsvWriter csv(ctx.file("trace.csv"), {"n", "t", "mode", "rung", "beta", "dir", "accepted"},
                  ctx.run_tag());
    run_one(0, &csv);
  }
  if (replicas > 1)
    for_each_index(replicas - 1, Execution::Parallel, [&](std::size_t i) { run_one(i + 1, nullptr); });

  AcceptanceTally tally(modes, top + 1);
  for (const auto& t : tallies) tally.merge(t);
  const auto profile = acceptance_profile(tally, ladder, cfg.target, cfg.experiment.min_proposals, cfg.convention);
  write_acceptance_csv(ctx, profile);

  rep.add_estimate("rungs", top + 1, 0.0, 1);
  for (int j = 0; j < modes; ++j) {
    const double p = profile.pooled_rate[static_cast<std::size_t>(j)];
    rep.add_estimate("acceptance_mode" + std::to_string(j + 1), p,
                     binomial_se(p, profile.pooled_proposals[static_cast<std::size_t>(j)]),
                     static_cast<std::int64_t>(replicas));
  }
  std::vector<double> means;
  std::int64_t count = 0;
  for (const auto& tr : trips) {
    count += static_cast<std::int64_t>(tr.size());
    if (tr.empty()) continue;
    double s = 0.0;
    for (const auto& t : tr) s += static_cast<double>(t.steps());
    means.push_back(s / static_cast<double>(tr.size()));
  }
  const MeanSe rt = mean_se(means);
  rep.add_estimate("round_trips", static_cast<double>(count), 0.0, static_cast<std::int64_t>(replicas));
  rep.add_estimate("round_trip_steps", rt.mean, rt.std_error, rt.n);

  std::int64_t boundary = 0;
  for (int j = 0; j < modes; ++j) boundary += tally.cell(j, 0).down_accepted + tally.cell(j, top).up_accepted;
  rep.add_check("boundary_proposals_accepted", static_cast<double>(boundary), 0.0, 0.0);
  if (cfg.experiment.tolerances.contains("acceptance")) {
    const double tol = cfg.experiment.tolerance("acceptance", 0.01);
    for (int j = 0; j < modes; ++j) {
      const double pred = limiting_acceptance(cfg.target.modes[static_cast<std::size_t>(j)].r,
                                              cfg.spacing.ell0, cfg.convention);
      rep.add_check("acceptance_mode" + std::to_string(j + 1), profile.pooled_rate[static_cast<std::size_t>(j)],
                    pred - tol, pred + tol);
    }
  }
}

void run_transform(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  if (cfg.target.mode_count() != 2) throw std::invalid_argument("transform needs a two-mode target");
  SimConfig sc;
  sc.target = cfg.target;
  sc.ladder = cfg.ladder();
  sc.steps = cfg.steps;
  sc.full_coordinate = cfg.full_coordinate;
  const Ladder& ladder = sc.ladder;
  const SkewConstants c = skew_constants(cfg.target, cfg.spacing.ell0, cfg.convention);
  const Trace trace = run(sc, stream_seed(cfg.seed, 0));
  const auto X = poissonize(trace, ladder);
  const auto H = to_H(X, ladder);
  const auto Z = to_Z(H);
  const auto W = to_W(Z, c);
  double domain_ok = 1.0;
  try {
    check_stage_domain(X, ladder, c);
    check_stage_domain(H, ladder, c);
    check_stage_domain(Z, ladder, c);
    check_stage_domain(W, ladder, c);
  } catch (const std::logic_error& e) {
    domain_ok = 0.0;
    rep.warnings.push_back(e.what());
  }
  {
    CsvWriter csv(ctx.file("path.csv"), {"i", "t_x", "x", "t_w", "h", "z", "w"}, ctx.run_tag());
    for (std::size_t i = 0; i < W.size(); ++i)
      csv.row(static_cast<std::int64_t>(i), X.times[i], X.values[i], W.times[i], H.values[i], Z.values[i], W.values[i]);
  }
  {
    SvgSeries s;
    const std::size_t stride = std::max<std::size_t>(1, W.size() / 20000);
    for (std::size_t i = 0; i < W.size(); i += stride) {
      s.x.push_back(W.times[i]);
      s.y.push_back(W.values[i]);
    }
    write_svg_plot(ctx.file("w_path.svg"), {s}, "W path", "rescaled time", "W");
  }
  const double level = cfg.experiment.excursion_level * std::min(c.wmax, std::abs(c.wmin));
  const auto ex = excursion_statistics(W, level);
  rep.add_estimate("s1", c.s1, 0.0, 1);
  rep.add_estimate("s2", c.s2, 0.0, 1);
  rep.add_estimate("alpha", c.alpha, 0.0, 1);
  rep.add_estimate("excursions", static_cast<double>(ex.excursions), 0.0, 1);
  rep.add_estimate("positive_excursion_fraction", ex.fraction_positive(), ex.std_error(), 1);
  rep.add_estimate("time_scale", W.time_scale, 0.0, 1);
  rep.add_check("stage_domains", domain_ok, 1.0, 1.0);
}

void run_compare(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  WeakConvergenceSpec spec;
  spec.base = base_of(cfg);
  spec.dims = cfg.experiment.dims.empty() ? std::vector<int>{16, 1024} : cfg.experiment.dims;
  spec.t_values = cfg.experiment.t_values;
  spec.replicas = replicas_or(cfg, 500);
  spec.reference_dt = cfg.experiment.reference_dt;
  if (spec.dims.size() < 2) throw std::invalid_argument("compare needs at least two dimensions");
  const double n = static_cast<double>(spec.replicas);
  // Two-sample KS noise scale at the 5% level for equal sizes.
  const double noise = cfg.experiment.tolerance("ks_noise", 1.358 * std::sqrt(2.0 / n));
  const auto res = weak_convergence_test(spec, cfg.seed, Execution::Parallel);
  for (const auto& w : res.warnings) rep.warnings.push_back(w);
  {
    CsvWriter csv(ctx.file("ks.csv"), {"d", "t", "ks", "p_value"}, ctx.run_tag());
    for (const auto& r : res.rows) csv.row(r.d, r.t, r.ks, r.p_value);
  }
  for (const auto& r : res.rows)
    rep.add_estimate("ks_d" + std::to_string(r.d) + "_t" + CsvWriter::cell(r.t), r.ks,
                     std::sqrt(2.0 / n) * 0.5, static_cast<std::int64_t>(spec.replicas));
  const int lo = spec.dims.front(), hi = spec.dims.back();
  for (double t : spec.t_values) {
    if (t <= 0.0) {
      rep.add_check("ks_at_t0_d" + std::to_string(hi), res.ks(hi, t), 0.0, 0.0);
      continue;
    }
    rep.add_check("ks_change_t" + CsvWriter::cell(t), res.ks(hi, t) - res.ks(lo, t), -kInf, noise);
  }
}

void run_complexity(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  ComplexitySpec spec;
  spec.base = base_of(cfg);
  spec.dims = cfg.experiment.dims.empty() ? std::vector<int>{16, 64, 256, 1024} : cfg.experiment.dims;
  spec.replicas = replicas_or(cfg, 4);
  spec.round_trip_budget = cfg.experiment.round_trip_budget;
  spec.full_coordinate = cfg.full_coordinate;
  if (spec.dims.size() < 2) throw std::invalid_argument("complexity needs at least two dimensions");
  const double flat = cfg.experiment.tolerance("flatness", 2.0);
  const auto res = complexity_scan(spec, cfg.seed, Execution::Parallel);
  {
    CsvWriter csv(ctx.file("complexity.csv"),
                  {"d", "betamax", "rungs", "steps", "trips", "mean_steps", "std_error", "mean_time",
                   "ratio_d_log2d", "ratio_d", "censored"},
                  ctx.run_tag());
    for (const auto& r : res.rows)
      csv.row(r.d, r.betamax, r.rungs, r.steps, r.trips, r.mean_steps, r.std_error, r.mean_time,
              r.per_d_log2, r.per_d, r.censored);
  }
  json table = json::array();
  for (const auto& r : res.rows) {
    table.push_back({{"d", r.d}, {"rungs", r.rungs}, {"trips", r.trips}, {"mean_steps", r.mean_steps},
                     {"ratio_d_log2d", r.per_d_log2}, {"ratio_d", r.per_d}, {"censored", r.censored}});
    rep.add_estimate("round_trip_steps_d" + std::to_string(r.d), r.mean_steps, r.std_error,
                     static_cast<std::int64_t>(spec.replicas));
  }
  rep.tables["complexity"] = table;
  std::int64_t censored = 0;
  for (const auto& r : res.rows) censored += r.censored ? 1 : 0;
  rep.add_check("censored_dimensions", static_cast<double>(censored), 0.0, 0.0);
  if (cfg.spacing.kind == SpacingKind::Standard) {
    rep.add_check("ratio_d_log2d_spread", res.spread(false), 1.0, flat);
  } else {
    rep.add_check("ratio_d_spread", res.spread(true), 1.0, flat);
    rep.add_check("ratio_d_log2d_decreasing", res.decreasing(false) ? 1.0 : 0.0, 1.0, 1.0);
  }
}

void run_excursions_cmd(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  ExcursionExperiment spec;
  spec.base = base_of(cfg);
  spec.steps = cfg.steps;
  spec.replicas = replicas_or(cfg, 1);
  spec.level_fraction = cfg.experiment.excursion_level;
  const auto res = run_excursions(spec, cfg.seed, Execution::Parallel);
  const auto& c = res.constants;
  const double sigmas = cfg.experiment.tolerance("excursion_sigma", 3.0);
  const double occ_tol = cfg.experiment.tolerance("occupation", 0.02);

  const double p = res.stats.fraction_positive();
  const double se = std::sqrt(c.alpha * (1.0 - c.alpha) / std::max<double>(1.0, static_cast<double>(res.stats.excursions)));
  rep.add_estimate("alpha", c.alpha, 0.0, 1);
  rep.add_estimate("excursion_level", res.stats.level, 0.0, 1);
  rep.add_estimate("excursions", static_cast<double>(res.stats.excursions), 0.0, static_cast<std::int64_t>(spec.replicas));
  rep.add_estimate("positive_excursion_fraction", p, res.stats.std_error(), static_cast<std::int64_t>(spec.replicas));
  const double all_p = res.stats.all_excursions > 0
                           ? static_cast<double>(res.stats.all_positive) / static_cast<double>(res.stats.all_excursions)
                           : 0.0;
  rep.add_estimate("positive_fraction_all_heights", all_p, binomial_se(all_p, res.stats.all_excursions),
                   static_cast<std::int64_t>(spec.replicas));
  const MeanSe raw = mean_se(res.replica_raw);
  const MeanSe off = mean_se(res.replica_off_junction);
  rep.add_estimate("time_positive_raw", res.occupation.raw_positive(), raw.std_error, raw.n);
  rep.add_estimate("time_positive_off_junction", res.occupation.off_junction_positive(), off.std_error, off.n);

  rep.add_check("excursion_count", static_cast<double>(res.stats.excursions),
                cfg.experiment.tolerance("min_excursions", 1e4), kInf);
  rep.add_check("positive_excursion_z", se > 0.0 ? (p - c.alpha) / se : 0.0, -sigmas, sigmas);
  rep.add_check("time_positive_off_junction", res.occupation.off_junction_positive(), c.w1 - occ_tol, c.w1 + occ_tol);

  // Reference occupation of the skew Brownian motion.
  SkewBMConfig ref;
  ref.constants = c;
  ref.dt = cfg.experiment.reference_dt;
  ref.horizon = cfg.experiment.reference_horizon;
  ref.initial = 0.0;
  const std::size_t walkers = 4;
  std::vector<double> frac(walkers);
  std::vector<int> left(walkers, 0);
  for_each_index(walkers, Execution::Parallel, [&](std::size_t i) {
    Engine rng = make_engine(stream_seed(cfg.seed, 1000 + i), Stream::Reference);
    const auto run = simulate(ref, rng, 0);
    frac[i] = run.positive_fraction();
    left[i] = run.left_domain ? 1 : 0;
  });
  const MeanSe bm = mean_se(frac);
  for (const auto& w : make_lattice(ref).warnings) rep.warnings.push_back(w);
  rep.add_estimate("skew_bm_time_positive", bm.mean, bm.std_error, bm.n);
  rep.add_check("skew_bm_time_positive", bm.mean, c.w1 - occ_tol, c.w1 + occ_tol);
  int escaped = 0;
  for (int l : left) escaped += l;
  rep.add_check("skew_bm_left_domain", escaped, 0.0, 0.0);

  CsvWriter csv(ctx.file("excursions.csv"), {"quantity", "value", "std_error"}, ctx.run_tag());
  for (const auto& e : rep.estimates) csv.row(e.name, e.value, e.std_error);
}

void run_appendix(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  std::vector<RefrwSweepRow> rows;
  const auto cells = refrw_sweep(cfg.appendix, Execution::Parallel, cfg.appendix_full_grid ? &rows : nullptr);
  std::int64_t violations = 0;
  double mass_error = 0.0, slack = kInf;
  for (const auto& c : cells) {
    violations += c.violations;
    mass_error = std::max(mass_error, c.max_mass_error);
    slack = std::min(slack, c.tightest_rhs - c.tightest_lhs);
  }
  if (cfg.appendix_full_grid) {
    CsvWriter csv(ctx.file("refrw_grid.csv"), {"m", "n", "initial", "lhs", "rhs", "holds"}, ctx.run_tag());
    for (const auto& r : rows) csv.row(r.m, r.n, r.initial, r.lhs, r.rhs, r.holds);
  }
  {
    CsvWriter csv(ctx.file("refrw_summary.csv"),
                  {"m", "initial", "violations", "first_violation", "tightest_n", "tightest_lhs",
                   "tightest_rhs", "max_mass_error", "final_target_prob"},
                  ctx.run_tag());
    for (const auto& c : cells)
      csv.row(c.m, c.initial, c.violations, c.first_violation, c.tightest_n, c.tightest_lhs,
              c.tightest_rhs, c.max_mass_error, c.final_target_prob);
  }
  rep.add_estimate("sweep_cells", static_cast<double>(cells.size()), 0.0, 1);
  rep.add_estimate("min_slack", slack, 0.0, 1);
  rep.add_check("bound_violations", static_cast<double>(violations), 0.0, 0.0);
  rep.add_check("mass_conservation_error", mass_error, 0.0, 1e-9);

  // Occupation of state 0 by the lazy birth-death chain.
  const std::size_t replicas = replicas_or(cfg, 400);
  const std::vector<std::pair<int, int>> grid{{10, 100}, {20, 1000}, {50, 10000}};
  std::vector<double> means;
  CsvWriter csv(ctx.file("occupation.csv"), {"m", "n", "mean_fraction", "std_error", "replicas"}, ctx.run_tag());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto [m, n] = grid[g];
    const auto occ = occupation_experiment(BirthDeathChain::lazy(m, 0.5), n, replicas,
                                           stream_seed(cfg.seed, g), 0, Execution::Parallel);
    csv.row(m, n, occ.mean, occ.std_error, static_cast<std::int64_t>(replicas));
    rep.add_estimate("occupation_m" + std::to_string(m) + "_n" + std::to_string(n), occ.mean, occ.std_error,
                     static_cast<std::int64_t>(replicas));
    means.push_back(occ.mean);
  }
  rep.add_check("occupation_m50_n10000", means.back(), 0.0, cfg.experiment.tolerance("occupation_bound", 0.05));
  rep.add_check("occupation_decreasing", (means[1] < means[0] && means[2] < means[1]) ? 1.0 : 0.0, 1.0, 1.0);
}

void run_demo_cmd(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  auto& rep = ctx.report;
  DemoResult res = run_demo(cfg.demo, cfg.seed);
  for (auto& e : res.report.estimates) rep.estimates.push_back(e);
  for (auto& c : res.report.checks) rep.checks.push_back(c);
  {
    CsvWriter csv(ctx.file("figure1_marginal.csv"), {"theta1", "density"}, ctx.run_tag());
    for (std::size_t i = 0; i < res.grid.size(); ++i) csv.row(res.grid[i], res.density[i]);
  }
  {
    CsvWriter csv(ctx.file("figure2_beta_trace.csv"), {"n", "t", "beta", "mode", "rung", "theta1"}, ctx.run_tag());
    for (const auto& r : res.trace) csv.row(r.n, r.t, r.beta, r.mode + 1, r.rung, r.theta1);
  }
  {
    CsvWriter csv(ctx.file("figure3_transformed_trace.csv"), {"n", "t", "signed_log_beta"}, ctx.run_tag());
    for (const auto& r : res.trace) csv.row(r.n, r.t, r.signed_log);
  }
  {
    CsvWriter csv(ctx.file("ladder.csv"), {"rung", "beta"}, ctx.run_tag());
    for (std::size_t i = 0; i < res.ladder.betas.size(); ++i) csv.row(static_cast<std::int64_t>(i), res.ladder.betas[i]);
  }
  SvgSeries dens{res.grid, res.density, "#1f77b4", false};
  write_svg_plot(ctx.file("figure1.svg"), {dens}, "theta1 marginal", "theta1", "density");
  SvgSeries b1{{}, {}, "#d62728", true}, b2{{}, {}, "#1f77b4", true}, f3{{}, {}, "#2ca02c", false};
  for (const auto& r : res.trace) {
    (r.mode == 0 ? b1 : b2).x.push_back(r.t);
    (r.mode == 0 ? b1 : b2).y.push_back(r.beta);
    f3.x.push_back(r.t);
    f3.y.push_back(r.signed_log);
  }
  write_svg_plot(ctx.file("figure2.svg"), {b1, b2}, "beta trace (red: mode 1, blue: mode 2)", "t", "beta");
  write_svg_plot(ctx.file("figure3.svg"), {f3}, "transformed trace", "t", "s log(betamax / beta)");
}

}  // namespace

ExperimentReport dispatch(const RunConfig& cfg, Command command, const fs::path& out_dir) {
  ExperimentReport rep;
  rep.kind = to_string(command);
  rep.config = to_json(cfg);
  rep.config_hash = config_hash(rep.config);
  rep.seed = cfg.seed;
  fs::create_directories(out_dir);
  Context ctx{cfg, out_dir, rep};
  switch (command) {
    case Command::Simulate: run_simulate(ctx); break;
    case Command::Transform: run_transform(ctx); break;
    case Command::Compare: run_compare(ctx); break;
    case Command::Complexity: run_complexity(ctx); break;
    case Command::Excursions: run_excursions_cmd(ctx); break;
    case Command::AppendixVerify: run_appendix(ctx); break;
    case Command::Demo: run_demo_cmd(ctx); break;
  }
  write_json(out_dir / (rep.kind + "_report.json"), rep);
  return rep;
}

}  // namespace alps
