#pragma once

// Mixture targets built from exponential-power modes g(x) ∝ exp(-lambda |x|^r),
// their weight-preserving tempered versions, and exact samplers for them.

#include <span>
#include <vector>

#include "alps/rng.hpp"

namespace alps {

struct ModeSpec {
  double lambda = 1.0;
  double r = 2.0;
  double weight = 0.5;
  double center = 0.0;  // coordinate offset; only the demo uses nonzero centers
};

struct MixtureTarget {
  std::vector<ModeSpec> modes;
  int dimension = 1;

  /// Throws std::invalid_argument on the first violated invariant.
  void validate() const;
  int mode_count() const { return static_cast<int>(modes.size()); }
  std::vector<double> weights() const;
};

/// S = sum_i |x_i|^r for the coordinates of one mode.
struct SufficientStat {
  double value = 0.0;
};

/// log ∫ exp(-beta lambda |x|^r) dx = log(2 Γ(1 + 1/r)) - log(beta lambda) / r.
double log_norm_const(const ModeSpec& mode, double beta);

/// Var(log g(x)) under the tempered coordinate law; equals beta^-2 / r.
double information(const ModeSpec& mode, double beta);

/// Exact draw from the tempered density ∝ exp(-beta lambda |x - center|^r).
double sample_tempered_coordinate(const ModeSpec& mode, double beta, Engine& rng);

/// S ~ Gamma(shape d/r, scale 1/(beta lambda)), the law of sum_i |X_i|^r for
/// d iid tempered coordinates.
SufficientStat sample_sufficient_stat(const ModeSpec& mode, double beta, int d, Engine& rng);

/// log of g^{beta_to}(x) / g^{beta_from}(x) for normalised tempered densities,
/// given S(x) and the dimension.
double log_accept_ratio(const ModeSpec& mode, double beta_from, double beta_to,
                        SufficientStat stat, int d);

/// log of the normalised tempered mode density at a full coordinate vector.
double log_tempered_density(const ModeSpec& mode, double beta, std::span<const double> x);

}  // namespace alps
