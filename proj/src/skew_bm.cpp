#include "alps/skew_bm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alps {

namespace {

void validate(const SkewBMConfig& config) {
  const auto& c = config.constants;
  if (!(c.wmin < 0.0 && c.wmax > 0.0)) throw std::invalid_argument("need wmin < 0 < wmax");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(config.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (!config.ray_weights.empty())
    throw std::invalid_argument("Walsh Brownian motion (more than two rays) is not supported");
  if (config.initial < c.wmin || config.initial > c.wmax)
    throw std::invalid_argument("initial point outside [wmin, wmax]");
}

std::int64_t snap(double value, double spacing) {
  return static_cast<std::int64_t>(std::llround(value / spacing));
}

}  // namespace

SkewBMLattice make_lattice(const SkewBMConfig& config) {
  validate(config);
  const auto& c = config.constants;
  SkewBMLattice lat;
  const double requested = std::sqrt(config.dt);
  lat.upper = std::max<std::int64_t>(1, snap(c.wmax, requested));
  lat.spacing = c.wmax / static_cast<double>(lat.upper);
  lat.dt = lat.spacing * lat.spacing;
  lat.lower = std::max<std::int64_t>(1, snap(-c.wmin, lat.spacing));
  lat.wmin_used = -static_cast<double>(lat.lower) * lat.spacing;
  if (std::abs(lat.dt - config.dt) > 1e-9 * config.dt) {
    std::ostringstream os;
    os << "dt adjusted from " << config.dt << " to " << lat.dt << " to align wmax with the lattice";
    lat.warnings.push_back(os.str());
  }
  if (lat.wmin_used != c.wmin) {
    std::ostringstream os;
    os << "wmin " << c.wmin << " rounded to lattice point " << lat.wmin_used;
    lat.warnings.push_back(os.str());
  }
  if (!(lat.spacing < std::min(-c.wmin, c.wmax) / 10.0)) {
    lat.warnings.push_back("lattice spacing is coarse relative to the interval");
  }
  return lat;
}

SkewWalker::SkewWalker(const SkewBMLattice& lattice, double alpha, std::int64_t start)
    : alpha_(alpha),
      spacing_(lattice.spacing),
      upper_(lattice.upper),
      lower_(lattice.lower),
      pos_(start) {}

SkewBMRun simulate(const SkewBMConfig& config, Engine& rng, std::int64_t record_every) {
  SkewBMRun out;
  out.lattice = make_lattice(config);
  const auto& lat = out.lattice;
  const auto steps = static_cast<std::int64_t>(std::llround(config.horizon / lat.dt));
  SkewWalker walker(lat, config.constants.alpha, snap(config.initial, lat.spacing));
  if (record_every > 0) {
    out.times.push_back(0.0);
    out.values.push_back(walker.value());
  }
  for (std::int64_t n = 1; n <= steps; ++n) {
    const bool was_zero = walker.position() == 0;
    walker.step(rng);
    const auto p = walker.position();
    if (was_zero) {
      ++out.excursions;
      if (p > 0) ++out.positive_excursions;
    }
    if (p > 0) ++out.steps_positive;
    if (p == 0) ++out.steps_at_zero;
    if (p > lat.upper || p < -lat.lower) out.left_domain = true;
    if (record_every > 0 && n % record_every == 0) {
      out.times.push_back(static_cast<double>(n) * lat.dt);
      out.values.push_back(walker.value());
    }
  }
  out.steps = steps;
  return out;
}

double stationary_occupation(const SkewConstants& c) {
  const double pos = c.alpha * c.wmax;
  return pos / (pos + (1.0 - c.alpha) * (-c.wmin));
}

std::vector<std::vector<double>> marginal_samples(const SkewBMConfig& config,
                                                  const std::vector<double>& times,
                                                  std::size_t n_replicas, std::uint64_t master,
                                                  Execution policy) {
  const auto lat = make_lattice(config);
  std::vector<std::int64_t> checkpoints;
  for (double t : times) {
    if (t < 0.0 || t > config.horizon) throw std::invalid_argument("sample time outside [0, horizon]");
    const auto s = static_cast<std::int64_t>(std::llround(t / lat.dt));
    if (!checkpoints.empty() && s < checkpoints.back())
      throw std::invalid_argument("sample times must be ascending");
    checkpoints.push_back(s);
  }
  std::vector<std::vector<double>> out(times.size(), std::vector<double>(n_replicas));
  const auto start = snap(config.initial, lat.spacing);
  for_each_index(n_replicas, policy, [&](std::size_t i) {
    Engine rng = make_engine(stream_seed(master, i));
    SkewWalker walker(lat, config.constants.alpha, start);
    std::int64_t done = 0;
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      for (; done < checkpoints[c]; ++done) walker.step(rng);
      out[c][i] = walker.value();
    }
  });
  return out;
}

std::vector<double> marginal_sample(const SkewBMConfig& config, double t, std::size_t n_replicas,
                                    std::uint64_t master, Execution policy) {
  return std::move(marginal_samples(config, {t}, n_replicas, master, policy).front());
}

}  // namespace alps
