#pragma once

// Reflecting skew Brownian motion on [wmin, wmax] with skew point 0, simulated
// by a lattice random walk whose step out of 0 is biased (Harrison-Shepp).

#include <cstdint>
#include <string>
#include <vector>

#include "alps/ladder.hpp"
#include "alps/parallel.hpp"
#include "alps/rng.hpp"

namespace alps {

struct SkewBMConfig {
  SkewConstants constants;
  double dt = 1e-4;
  double horizon = 1.0;
  double initial = 0.0;  // snapped to the nearest lattice point
  /// Optional excursion weights for more than two rays; reserved, must stay empty.
  std::vector<double> ray_weights;
};

/// Lattice geometry actually used after aligning to the boundaries.
struct SkewBMLattice {
  double spacing = 0.0;  // sqrt(effective dt)
  double dt = 0.0;
  std::int64_t upper = 0;  // wmax / spacing, exact
  std::int64_t lower = 0;  // |wmin| / spacing, rounded
  double wmin_used = 0.0;  // -lower * spacing
  std::vector<std::string> warnings;
};

/// Picks spacing = wmax / round(wmax / sqrt(dt)) so 0 and wmax are lattice
/// points; wmin is rounded to the nearest lattice point. Records a warning
/// when dt changes by more than 1e-9 relative or wmin moves.
SkewBMLattice make_lattice(const SkewBMConfig& config);

/// Walker on the integer lattice. Position p maps to p * spacing.
class SkewWalker {
 public:
  SkewWalker(const SkewBMLattice& lattice, double alpha, std::int64_t start);

  void step(Engine& rng) {
    if (pos_ == 0) {
      pos_ = uniform01(rng) < alpha_ ? 1 : -1;
    } else {
      pos_ += fair_coin(rng) ? 1 : -1;
      if (pos_ > upper_) pos_ = 2 * upper_ - pos_;
      else if (pos_ < -lower_) pos_ = -2 * lower_ - pos_;
    }
  }
  std::int64_t position() const { return pos_; }
  double value() const { return static_cast<double>(pos_) * spacing_; }

 private:
  double alpha_;
  double spacing_;
  std::int64_t upper_;
  std::int64_t lower_;
  std::int64_t pos_;
};

struct SkewBMRun {
  SkewBMLattice lattice;
  std::vector<double> times;   // recorded every `record_every` steps
  std::vector<double> values;
  std::int64_t steps = 0;
  std::int64_t steps_positive = 0;  // steps spent in (0, wmax]
  std::int64_t steps_at_zero = 0;
  std::int64_t excursions = 0;      // completed departures from 0
  std::int64_t positive_excursions = 0;
  bool left_domain = false;         // any position outside [wmin, wmax]; must stay false

  double positive_fraction() const {
    return steps > 0 ? static_cast<double>(steps_positive) / static_cast<double>(steps) : 0.0;
  }
};

/// Runs to the horizon. Statistics use every step; the stored path keeps one
/// point per `record_every` steps (0 stores nothing).
SkewBMRun simulate(const SkewBMConfig& config, Engine& rng, std::int64_t record_every = 1);

/// alpha wmax / (alpha wmax + (1 - alpha) |wmin|), which equals w1.
double stationary_occupation(const SkewConstants& constants);

/// Values at time t of n independent walkers started at config.initial.
/// Walker i uses stream stream_seed(master, i).
std::vector<double> marginal_sample(const SkewBMConfig& config, double t, std::size_t n_replicas,
                                    std::uint64_t master, Execution policy = Execution::Parallel);

/// Values at several times (ascending) from the same walkers; rows follow `times`.
std::vector<std::vector<double>> marginal_samples(const SkewBMConfig& config,
                                                  const std::vector<double>& times,
                                                  std::size_t n_replicas, std::uint64_t master,
                                                  Execution policy = Execution::Parallel);

}  // namespace alps
