#include "alps/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace alps {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::domain_error("inverse temperature must be positive and finite, got " +
                            std::to_string(beta));
  }
}

}  // namespace

void MixtureTarget::validate() const {
  if (modes.size() < 2) throw std::invalid_argument("a mixture target needs at least two modes");
  if (dimension < 1) throw std::invalid_argument("dimension must be a positive integer");
  double total = 0.0;
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const auto& m = modes[j];
    const auto tag = "mode " + std::to_string(j + 1);
    if (!(m.lambda > 0.0)) throw std::invalid_argument(tag + ": lambda must be > 0");
    if (!(m.r > 0.0)) throw std::invalid_argument(tag + ": r must be > 0");
    if (!(m.weight > 0.0 && m.weight < 1.0))
      throw std::invalid_argument(tag + ": weight must lie in (0, 1)");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
}

std::vector<double> MixtureTarget::weights() const {
  std::vector<double> w;
  w.reserve(modes.size());
  for (const auto& m : modes) w.push_back(m.weight);
  return w;
}

double log_norm_const(const ModeSpec& mode, double beta) {
  require_beta(beta);
  return std::log(2.0) + std::lgamma(1.0 + 1.0 / mode.r) - std::log(beta * mode.lambda) / mode.r;
}

double information(const ModeSpec& mode, double beta) {
  require_beta(beta);
  return 1.0 / (beta * beta * mode.r);
}

double sample_tempered_coordinate(const ModeSpec& mode, double beta, Engine& rng) {
  require_beta(beta);
  std::gamma_distribution<double> gamma(1.0 / mode.r, 1.0 / (beta * mode.lambda));
  const double magnitude = std::pow(gamma(rng), 1.0 / mode.r);
  return mode.center + (fair_coin(rng) ? magnitude : -magnitude);
}

SufficientStat sample_sufficient_stat(const ModeSpec& mode, double beta, int d, Engine& rng) {
  require_beta(beta);
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  std::gamma_distribution<double> gamma(static_cast<double>(d) / mode.r, 1.0 / (beta * mode.lambda));
  return {gamma(rng)};
}

double log_accept_ratio(const ModeSpec& mode, double beta_from, double beta_to, SufficientStat stat,
                        int d) {
  if (beta_from == beta_to) return 0.0;
  return (beta_from - beta_to) * mode.lambda * stat.value +
         static_cast<double>(d) * (log_norm_const(mode, beta_from) - log_norm_const(mode, beta_to));
}

double log_tempered_density(const ModeSpec& mode, double beta, std::span<const double> x) {
  double energy = 0.0;
  for (double xi : x) energy += std::pow(std::abs(xi - mode.center), mode.r);
  return -beta * mode.lambda * energy - static_cast<double>(x.size()) * log_norm_const(mode, beta);
}

}  // namespace alps
