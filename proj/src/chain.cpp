#include "alps/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace alps {

SufficientStatKernel::SufficientStatKernel(const MixtureTarget& target, const Ladder& ladder)
    : modes_(target.modes),
      ladder_(&ladder),
      rungs_(ladder.betas.size()),
      dim_(static_cast<double>(target.dimension)) {
  if (target.dimension != ladder.dimension)
    throw std::invalid_argument("target and ladder dimensions differ");
  for (const auto& m : modes_) {
    gammas_.emplace_back(dim_ / m.r, 1.0);
    for (double beta : ladder.effective) {
      inv_scale_.push_back(1.0 / (beta * m.lambda));
      log_norm_.push_back(log_norm_const(m, beta));
    }
  }
}

FullCoordinateKernel::FullCoordinateKernel(const MixtureTarget& target, const Ladder& ladder)
    : modes_(target.modes), ladder_(&ladder), x_(static_cast<std::size_t>(target.dimension)) {
  if (target.dimension != ladder.dimension)
    throw std::invalid_argument("target and ladder dimensions differ");
  for (auto& m : modes_) m.center = 0.0;
}

void FullCoordinateKernel::resample(int mode, int rung, Engine& rng) {
  const auto& m = modes_[static_cast<std::size_t>(mode)];
  const double beta = ladder_->effective[static_cast<std::size_t>(rung)];
  for (double& xi : x_) xi = sample_tempered_coordinate(m, beta, rng);
}

double FullCoordinateKernel::log_accept(int mode, int from, int to) const {
  const auto& m = modes_[static_cast<std::size_t>(mode)];
  return log_tempered_density(m, ladder_->effective[static_cast<std::size_t>(to)], x_) -
         log_tempered_density(m, ladder_->effective[static_cast<std::size_t>(from)], x_);
}

std::vector<double> cumulative_weights(const std::vector<double>& weights) {
  std::vector<double> c;
  double acc = 0.0;
  for (double w : weights) c.push_back(acc += w);
  if (!c.empty()) c.back() = 1.0;
  return c;
}

ChainState initial_state(const SimConfig& config, Engine& rng) {
  if (config.initial) {
    const auto s = *config.initial;
    if (s.rung < 0 || s.rung > config.ladder.top() || s.mode < 0 ||
        s.mode >= config.target.mode_count())
      throw std::invalid_argument("initial state outside the ladder or mode range");
    return s;
  }
  return {draw_mode(cumulative_weights(config.target.weights()), rng), 0};
}

Trace run(const SimConfig& config, std::uint64_t seed) {
  Trace trace;
  trace.seed = seed;
  trace.dimension = config.target.dimension;
  trace.records.reserve(static_cast<std::size_t>(std::max<std::int64_t>(config.steps, 0)));
  {
    Engine probe = make_engine(seed, Stream::Chain);
    trace.initial = initial_state(config, probe);
  }
  run_streaming(config, seed, [&](const TraceRecord& r) { trace.records.push_back(r); });
  return trace;
}

TransformedPath poissonize(const Trace& trace, const Ladder& ladder) {
  TransformedPath path;
  path.stage = Stage::X;
  path.time_scale = static_cast<double>(trace.dimension);
  const auto signed_beta = [&](int mode, int rung) {
    const double b = ladder.betas[static_cast<std::size_t>(rung)];
    return mode == 0 ? b : -b;
  };
  path.times.reserve(trace.records.size() + 1);
  path.values.reserve(trace.records.size() + 1);
  path.times.push_back(0.0);
  path.values.push_back(signed_beta(trace.initial.mode, trace.initial.rung));
  for (const auto& r : trace.records) {
    path.times.push_back(r.t);
    path.values.push_back(signed_beta(r.mode, r.rung));
  }
  return path;
}

std::vector<Trace> run_replicas(const SimConfig& config, std::uint64_t master, std::size_t replicas,
                                Execution policy) {
  std::vector<Trace> traces(replicas);
  for_each_index(replicas, policy,
                 [&](std::size_t i) { traces[i] = run(config, stream_seed(master, i)); });
  return traces;
}

}  // namespace alps
