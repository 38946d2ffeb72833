#pragma once
// Experiments over chain runs: acceptance profiles, round trips, excursion
// and occupation statistics, the complexity scan, the weak-convergence
// comparison against skew Brownian motion, and kernel cross-validation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alps/chain.hpp"
#include "alps/ladder.hpp"
#include "alps/parallel.hpp"
#include "alps/stats.hpp"
#include "alps/transform.hpp"

namespace alps {

// ---------------------------------------------------------------- acceptance

/// Counts temperature proposals and acceptances per (mode, rung, direction).
class AcceptanceTally {
 public:
  struct Cell {
    std::int64_t up_proposed = 0;
    std::int64_t up_accepted = 0;
    std::int64_t down_proposed = 0;
    std::int64_t down_accepted = 0;
  };

  AcceptanceTally(int modes, int rungs);
  void operator()(const TraceRecord& rec);
  void merge(const AcceptanceTally& other);
  const Cell& cell(int mode, int rung) const {
    return cells_[static_cast<std::size_t>(mode) * static_cast<std::size_t>(rungs_) +
                  static_cast<std::size_t>(rung)];
  }
  int modes() const { return modes_; }
  int rungs() const { return rungs_; }

 private:
  int modes_;
  int rungs_;
  std::vector<Cell> cells_;
};

struct AcceptanceRow {
  int mode = 0;
  int rung = 0;
  AcceptanceTally::Cell counts;
  std::int64_t proposals = 0;  // in-range proposals only
  std::int64_t accepted = 0;
  double rate = 0.0;
  double predicted = 0.0;      // limiting s^2 of the mode
  double z = 0.0;
  bool interior = false;       // 1 <= rung <= top - 1
  bool near_clamp = false;     // touches the shortened last gap
  bool sufficient = false;     // proposals >= the configured minimum
};

struct AcceptanceProfile {
  std::vector<AcceptanceRow> rows;
  std::vector<double> pooled_rate;  // per mode, interior rungs away from the clamp
  std::vector<std::int64_t> pooled_proposals;
};

AcceptanceProfile acceptance_profile(const AcceptanceTally& tally, const Ladder& ladder,
                                     const MixtureTarget& target, std::int64_t min_proposals = 1000,
                                     SkewConvention convention = SkewConvention::InverseRoot);
AcceptanceProfile acceptance_profile(const Trace& trace, const Ladder& ladder,
                                     const MixtureTarget& target, std::int64_t min_proposals = 1000,
                                     SkewConvention convention = SkewConvention::InverseRoot);

// ---------------------------------------------------------------- round trips

/// A passage rung 0 -> rung top -> rung 0. Indices count chain steps: index 0
/// is the initial state, index n + 1 the state after record n.
struct RoundTrip {
  std::int64_t start = 0;
  std::int64_t peak = 0;
  std::int64_t end = 0;
  double start_time = 0.0;
  double end_time = 0.0;
  std::int64_t steps() const { return end - start; }
  double duration() const { return end_time - start_time; }
};

/// Streaming scanner. Consecutive trips share endpoints, so they tile the run
/// after the first visit to rung 0.
class RoundTripScanner {
 public:
  explicit RoundTripScanner(int top) : top_(top) {}
  void visit(std::int64_t index, double time, int rung);
  void operator()(const TraceRecord& rec) { visit(rec.n + 1, rec.t, rec.rung); }
  const std::vector<RoundTrip>& trips() const { return trips_; }
  std::int64_t count() const { return static_cast<std::int64_t>(trips_.size()); }

 private:
  int top_;
  int phase_ = 0;  // 0: looking for rung 0, 1: for the top, 2: back to 0
  RoundTrip current_;
  std::vector<RoundTrip> trips_;
};

std::vector<RoundTrip> round_trips(const Trace& trace, int top);

// ---------------------------------------------------------------- excursions

struct ExcursionStats {
  std::int64_t excursions = 0;  // completed excursions reaching the level
  std::int64_t positive = 0;
  std::int64_t all_excursions = 0;  // completed excursions of any height
  std::int64_t all_positive = 0;
  double level = 0.0;
  double fraction_positive() const {
    return excursions > 0 ? static_cast<double>(positive) / static_cast<double>(excursions) : 0.0;
  }
  double std_error() const;
  void merge(const ExcursionStats& other);
};

/// Feeds W values one at a time. An excursion is a maximal run of nonzero
/// values between two zeros; it counts toward `excursions` when its
/// largest |W| reaches `level`. Runs before the first zero are ignored.
class ExcursionCounter {
 public:
  explicit ExcursionCounter(double level = 0.0) { stats_.level = level; }
  void operator()(double w);
  const ExcursionStats& stats() const { return stats_; }

 private:
  ExcursionStats stats_;
  bool seen_zero_ = false;
  int sign_ = 0;
  double height_ = 0.0;
};

ExcursionStats excursion_statistics(const TransformedPath& path_w, double level = 0.0);

/// Time split of a W path into positive, negative and junction values.
struct OccupationCounts {
  std::int64_t positive = 0;
  std::int64_t negative = 0;
  std::int64_t zero = 0;
  double raw_positive() const;
  double off_junction_positive() const;
  void merge(const OccupationCounts& other);
};

// ---------------------------------------------------------------- experiments

/// Common setup shared by the experiments: a two-mode target at some
/// dimension and the ladder recipe.
struct ExperimentBase {
  MixtureTarget target;  // dimension is overwritten where an experiment scans d
  Spacing spacing;
  double betamax_factor = 1.0;  // betamax = factor * d
  /// Raise betamax to the next recurrence point so the last gap is not
  /// shortened (keeps every W step the same size).
  bool align_top = false;
  SkewConvention convention = SkewConvention::InverseRoot;

  Ladder ladder_for(int d) const;
  MixtureTarget target_for(int d) const;
};

struct AcceptanceExperiment {
  ExperimentBase base;
  std::int64_t steps = 0;
  std::size_t replicas = 1;
  std::int64_t min_proposals = 1000;
};

struct AcceptanceExperimentResult {
  Ladder ladder;
  AcceptanceTally tally{2, 1};
  AcceptanceProfile profile;
};

AcceptanceExperimentResult run_acceptance(const AcceptanceExperiment& spec, std::uint64_t seed,
                                          Execution policy = Execution::Parallel);

struct ComplexitySpec {
  ExperimentBase base;
  std::vector<int> dims;
  std::size_t replicas = 4;
  /// Steps per replica = round_trip_budget * (k + 1)^2 with k the top rung.
  double round_trip_budget = 200.0;
  bool full_coordinate = false;
};

struct ComplexityRow {
  int d = 0;
  double betamax = 0.0;
  int rungs = 0;
  std::int64_t steps = 0;      // total chain steps across replicas
  std::int64_t trips = 0;
  double mean_steps = 0.0;     // mean round-trip length in chain steps
  double std_error = 0.0;      // over replica means
  double mean_time = 0.0;      // in Poisson time units (steps / d)
  double per_d_log2 = 0.0;     // mean_steps / (d log^2 d)
  double per_d = 0.0;          // mean_steps / d
  bool censored = false;       // fewer than the minimum number of trips
};

struct ComplexityResult {
  std::vector<ComplexityRow> rows;
  /// max/min of the ratio column across uncensored rows.
  double spread(bool per_d) const;
  /// True when the ratio strictly decreases row over row.
  bool decreasing(bool per_d) const;
};

ComplexityResult complexity_scan(const ComplexitySpec& spec, std::uint64_t seed,
                                 Execution policy = Execution::Parallel,
                                 std::int64_t min_trips = 50);

/// Occupation and excursion statistics of the W image of long runs.
struct ExcursionExperiment {
  ExperimentBase base;
  std::int64_t steps = 0;
  std::size_t replicas = 1;
  double level_fraction = 0.5;  // level = fraction * min(wmax, |wmin|)
};

struct ExcursionExperimentResult {
  Ladder ladder;
  SkewConstants constants;
  ExcursionStats stats;
  OccupationCounts occupation;
  std::vector<double> replica_raw;          // per-replica raw positive fraction
  std::vector<double> replica_off_junction; // per-replica off-junction fraction
};

ExcursionExperimentResult run_excursions(const ExcursionExperiment& spec, std::uint64_t seed,
                                         Execution policy = Execution::Parallel);

struct WeakConvergenceSpec {
  ExperimentBase base;
  std::vector<int> dims;
  std::vector<double> t_values;  // W-time, ascending
  std::size_t replicas = 500;
  double reference_dt = 1e-4;
  /// When set, must match the constants implied by the target; a mismatch
  /// throws std::invalid_argument.
  std::optional<SkewConstants> constants;
};

struct WeakConvergenceRow {
  int d = 0;
  double t = 0.0;
  double ks = 0.0;
  double p_value = 1.0;
};

struct WeakConvergenceResult {
  SkewConstants constants;
  std::vector<WeakConvergenceRow> rows;
  std::vector<std::string> warnings;
  double ks(int d, double t) const;
};

/// W values at the given W-times of `replicas` chains started at rung 0 in
/// mode 1. Chain steps arrive at rate d h(betamax)^2 in W-time.
std::vector<std::vector<double>> alps_w_marginals(const MixtureTarget& target, const Ladder& ladder,
                                                  const SkewConstants& constants,
                                                  const std::vector<double>& t_values,
                                                  std::size_t replicas, std::uint64_t master,
                                                  Execution policy = Execution::Parallel);

/// Both samples start at W = wmax. One skew Brownian reference sample per t
/// is shared across dimensions.
WeakConvergenceResult weak_convergence_test(const WeakConvergenceSpec& spec, std::uint64_t seed,
                                            Execution policy = Execution::Parallel);

/// Throws std::invalid_argument when the two sets of constants differ.
void require_matching_constants(const SkewConstants& given, const SkewConstants& implied);

struct CrossValidationSpec {
  ExperimentBase base;
  std::size_t replicas = 4000;
  std::int64_t steps = 500;  // the snapshot is taken after this many steps
};

struct CrossValidationResult {
  Ladder ladder;
  ChiSquareResult occupation;   // final (mode, rung) of the two kernels
  ChiSquareResult acceptance;   // sum of per-cell 2x2 tests
  std::vector<std::vector<double>> occupation_table;
  AcceptanceTally tally_stat{2, 1};
  AcceptanceTally tally_full{2, 1};
};

/// Runs the sufficient-statistic and full-coordinate kernels on the same
/// configuration with independent seeds and compares their output laws.
CrossValidationResult cross_validate(const CrossValidationSpec& spec, std::uint64_t seed,
                                     Execution policy = Execution::Parallel);

/// Mean round-trip length at betamax and 2 betamax for the same target.
struct DoublingResult {
  ComplexityRow base;
  ComplexityRow doubled;
  double ratio() const { return doubled.mean_steps / base.mean_steps; }
};

DoublingResult betamax_doubling(const ComplexitySpec& spec, int d, std::uint64_t seed,
                                Execution policy = Execution::Parallel);

}  // namespace alps
