#pragma once
// Worked scenario: a two-mode skew-normal mixture in a few dimensions with
// tabulated exact samplers for each tempered mode.

#include <cstdint>
#include <vector>

#include "alps/ladder.hpp"
#include "alps/report.hpp"
#include "alps/rng.hpp"

namespace alps {

struct SkewNormalMode {
  double weight = 0.5;
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
  /// log of (2 / scale) phi(z) Phi(shape z), z = (x - location) / scale.
  double log_pdf(double x) const;
};

/// Inverse-CDF sampler of the density proportional to g(x)^beta on the
/// region where beta (log g - max log g) >= -cutoff.
class TemperedTable {
 public:
  TemperedTable(const SkewNormalMode& mode, double beta, int points, double cutoff = 50.0);
  double sample(Engine& rng) const;
  double log_norm() const { return log_norm_; }  // log ∫ g^beta, by adaptive quadrature
  double lower() const { return lo_; }
  double upper() const { return hi_; }

 private:
  std::vector<double> grid_;
  std::vector<double> cdf_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double log_norm_ = 0.0;
};

/// Coordinates drawn from tables; the mode after resampling is the one
/// whose location is nearest in squared distance.
class TabulatedKernel {
 public:
  TabulatedKernel(const std::vector<SkewNormalMode>& modes, const Ladder& ladder, int points);
  void resample(int mode, int rung, Engine& rng);
  double log_accept(int mode, int from, int to) const;
  int allocated_mode(int) const { return allocated_; }
  const std::vector<double>& coordinates() const { return x_; }

 private:
  std::vector<SkewNormalMode> modes_;
  const Ladder* ladder_;
  std::vector<std::vector<TemperedTable>> tables_;  // [mode][rung]
  std::vector<double> x_;
  std::vector<double> sum_log_;  // sum_i log g_j(x_i) for every mode j
  int allocated_ = 0;
};

struct DemoSpec {
  std::vector<SkewNormalMode> modes{{0.7, -20.0, 1.0, 10.0}, {0.3, 20.0, 2.0, 10.0}};
  int dimension = 5;
  double betamax = 256.0;
  double ell0 = 2.38;
  std::int64_t steps = 4'000'000;
  int table_points = 2048;
  std::int64_t export_every = 200;  // trace decimation
  double grid_lo = -40.0;
  double grid_hi = 40.0;
  double grid_step = 0.002;
  int batches = 50;
};

struct DemoTraceRow {
  std::int64_t n = 0;
  double t = 0.0;  // Poisson time at rate d
  int mode = 0;
  int rung = 0;
  double beta = 1.0;
  double theta1 = 0.0;
  double signed_log = 0.0;  // +-log(betamax / beta), + for mode 1
};

struct DemoResult {
  Ladder ladder;
  ExperimentReport report;
  std::vector<double> grid;
  std::vector<double> density;  // first-coordinate marginal of the target
  std::vector<DemoTraceRow> trace;
  std::vector<double> theta1_at_target;  // decimated first coordinate at beta = 1
};

/// Mixture density of one coordinate: sum_j w_j g_j(x).
double demo_marginal(const DemoSpec& spec, double x);

/// Composite Simpson rule on a uniform grid with an even number of intervals.
double simpson(const std::vector<double>& y, double step);

DemoResult run_demo(const DemoSpec& spec, std::uint64_t seed);

}  // namespace alps
