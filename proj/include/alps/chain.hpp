#pragma once

// The vanilla ALPS chain on (mode, rung): immediate within-mode mixing, a
// +-1 rung proposal, boundary rejection, and a mode refresh at betamax.

#include <concepts>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "alps/ladder.hpp"
#include "alps/model.hpp"
#include "alps/parallel.hpp"
#include "alps/rng.hpp"
#include "alps/transform.hpp"

namespace alps {

struct ChainState {
  int mode = 0;  // 0-based: 0 is "mode 1"
  int rung = 0;
};

struct StepInfo {
  int direction = 0;  // proposed rung offset, +1 or -1
  bool accepted = false;
  bool mode_refreshed = false;  // a mode draw happened (chain was at the top rung)
};

/// One trace record: the state after step n together with the proposal made in it.
struct TraceRecord {
  std::int64_t n = 0;
  double t = 0.0;  // Poisson arrival time at rate d
  int mode = 0;
  int rung = 0;
  double beta = 1.0;
  int direction = 0;
  bool accepted = false;

  int from_rung() const { return accepted ? rung - direction : rung; }
};

struct Trace {
  ChainState initial;
  std::vector<TraceRecord> records;
  std::uint64_t seed = 0;
  int dimension = 1;
};

/// Within-mode state handler. resample() draws a fresh state from mode
/// `mode` tempered at the ladder's rung; log_accept() evaluates the
/// temperature-move log ratio at that state.
template <class K>
concept ModeKernel = requires(K k, const K ck, Engine& rng, int mode, int rung) {
  { k.resample(mode, rung, rng) };
  { ck.log_accept(mode, rung, rung) } -> std::convertible_to<double>;
  { ck.allocated_mode(mode) } -> std::convertible_to<int>;
};

/// Exponential-power modes via the Gamma law of the sufficient statistic; O(1) per step.
class SufficientStatKernel {
 public:
  SufficientStatKernel(const MixtureTarget& target, const Ladder& ladder);

  void resample(int mode, int rung, Engine& rng) {
    stat_.value = gammas_[static_cast<std::size_t>(mode)](rng) * inv_scale_[idx(mode, rung)];
  }
  double log_accept(int mode, int from, int to) const {
    const auto& m = modes_[static_cast<std::size_t>(mode)];
    return (ladder_->effective[static_cast<std::size_t>(from)] -
            ladder_->effective[static_cast<std::size_t>(to)]) *
               m.lambda * stat_.value +
           dim_ * (log_norm_[idx(mode, from)] - log_norm_[idx(mode, to)]);
  }
  int allocated_mode(int mode) const { return mode; }
  SufficientStat stat() const { return stat_; }

 private:
  std::size_t idx(int mode, int rung) const {
    return static_cast<std::size_t>(mode) * rungs_ + static_cast<std::size_t>(rung);
  }

  std::vector<ModeSpec> modes_;
  const Ladder* ladder_;
  std::size_t rungs_;
  double dim_;
  std::vector<std::gamma_distribution<double>> gammas_;  // Gamma(d/r, 1) per mode
  std::vector<double> inv_scale_;                        // 1/(beta_eff lambda) per (mode, rung)
  std::vector<double> log_norm_;                         // log_norm_const per (mode, rung)
  SufficientStat stat_;
};

/// Exponential-power modes with every coordinate drawn and stored; O(d) per step.
class FullCoordinateKernel {
 public:
  FullCoordinateKernel(const MixtureTarget& target, const Ladder& ladder);

  void resample(int mode, int rung, Engine& rng);
  double log_accept(int mode, int from, int to) const;
  int allocated_mode(int mode) const { return mode; }
  const std::vector<double>& coordinates() const { return x_; }

 private:
  std::vector<ModeSpec> modes_;
  const Ladder* ladder_;
  std::vector<double> x_;
};

/// Cumulative mixture weights for the mode refresh.
std::vector<double> cumulative_weights(const std::vector<double>& weights);

inline int draw_mode(const std::vector<double>& cumulative, Engine& rng) {
  const double u = uniform01(rng);
  for (std::size_t j = 0; j + 1 < cumulative.size(); ++j)
    if (u < cumulative[j]) return static_cast<int>(j);
  return static_cast<int>(cumulative.size()) - 1;
}

/// One iteration of the chain. The mode refresh tests the rung held at the
/// start of the iteration.
template <ModeKernel K>
StepInfo step(ChainState& state, const Ladder& ladder, const std::vector<double>& cumulative,
              K& kernel, Engine& rng) {
  StepInfo info;
  const int top = ladder.top();
  if (state.rung == top) {
    state.mode = draw_mode(cumulative, rng);
    info.mode_refreshed = true;
  }
  kernel.resample(state.mode, state.rung, rng);
  state.mode = kernel.allocated_mode(state.mode);

  info.direction = fair_coin(rng) ? 1 : -1;
  const int to = state.rung + info.direction;
  // Proposals below rung 0 or above the top rung have acceptance 0. The
  // uniform is drawn regardless so the stream layout does not depend on it.
  const double u = uniform01_open_low(rng);
  if (to < 0 || to > top) return info;
  const double log_ratio = kernel.log_accept(state.mode, state.rung, to);
  if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
    state.rung = to;
    info.accepted = true;
  }
  return info;
}

/// Runs `steps` iterations, handing each TraceRecord to `sink`. If `clock`
/// is non-null, records carry Poisson arrival times at rate d drawn from it;
/// otherwise t is 0.
template <ModeKernel K, class Sink>
ChainState run_chain(const Ladder& ladder, const std::vector<double>& cumulative, K& kernel,
                     ChainState state, std::int64_t steps, Engine& rng, Engine* clock,
                     Sink&& sink) {
  std::exponential_distribution<double> arrival(static_cast<double>(ladder.dimension));
  TraceRecord rec;
  double t = 0.0;
  for (std::int64_t n = 0; n < steps; ++n) {
    const StepInfo info = step(state, ladder, cumulative, kernel, rng);
    if (clock != nullptr) t += arrival(*clock);
    rec.n = n;
    rec.t = t;
    rec.mode = state.mode;
    rec.rung = state.rung;
    rec.beta = ladder.betas[static_cast<std::size_t>(state.rung)];
    rec.direction = info.direction;
    rec.accepted = info.accepted;
    sink(rec);
  }
  return state;
}

struct SimConfig {
  MixtureTarget target;
  Ladder ladder;
  std::int64_t steps = 0;
  bool full_coordinate = false;
  bool poisson_clock = true;
  std::optional<ChainState> initial;  // default: rung 0, mode drawn from the weights
};

/// Initial state: the configured one, else rung 0 with a mode drawn from w.
ChainState initial_state(const SimConfig& config, Engine& rng);

/// Full trace of one run. The chain uses stream Chain of `seed`, the clock
/// stream Clock; the same seed always reproduces the same trace.
Trace run(const SimConfig& config, std::uint64_t seed);

/// Streaming form of run(): same streams, records go to `sink`.
template <class Sink>
ChainState run_streaming(const SimConfig& config, std::uint64_t seed, Sink&& sink) {
  Engine rng = make_engine(seed, Stream::Chain);
  Engine clock = make_engine(seed, Stream::Clock);
  const ChainState init = initial_state(config, rng);
  const auto cumulative = cumulative_weights(config.target.weights());
  Engine* clock_ptr = config.poisson_clock ? &clock : nullptr;
  if (config.full_coordinate) {
    FullCoordinateKernel kernel(config.target, config.ladder);
    return run_chain(config.ladder, cumulative, kernel, init, config.steps, rng, clock_ptr, sink);
  }
  SufficientStatKernel kernel(config.target, config.ladder);
  return run_chain(config.ladder, cumulative, kernel, init, config.steps, rng, clock_ptr, sink);
}

/// Signed-beta step path (stage X): +beta in mode 1, -beta in mode 2, with
/// time in units of the rate-d Poisson clock. time_scale = d.
TransformedPath poissonize(const Trace& trace, const Ladder& ladder);

/// Replica ensemble: replica i runs with seed stream_seed(master, i).
/// Serial and Parallel execution give identical traces.
std::vector<Trace> run_replicas(const SimConfig& config, std::uint64_t master, std::size_t replicas,
                                Execution policy);

}  // namespace alps
