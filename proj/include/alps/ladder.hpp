#pragma once

#include <vector>

#include "alps/model.hpp"

namespace alps {

enum class SpacingKind { Standard, QuanTA };

/// Inverse-temperature spacing function ell(beta) and its integral h.
///
/// Standard: ell(beta) = ell0 * beta, the optimal choice when I(beta) ∝ beta^-2.
/// QuanTA:   ell(beta) = ell0 * beta^(k/2) with k > 2.
struct Spacing {
  SpacingKind kind = SpacingKind::Standard;
  double ell0 = 2.38;
  double quanta_k = 3.0;

  static Spacing standard(double ell0 = 2.38) { return {SpacingKind::Standard, ell0, 3.0}; }
  static Spacing quanta(double k, double ell0 = 2.38) { return {SpacingKind::QuanTA, ell0, k}; }

  /// Throws std::invalid_argument for ell0 <= 0 or a QuanTA exponent k <= 2.
  void validate() const;

  double ell(double beta) const;

  /// h(x) = ∫_1^|x| du / ell(u). Throws std::domain_error for |x| < 1.
  double h(double x) const;

  /// The |x| >= 1 with h(x) = y.
  double h_inverse(double y) const;

  /// Inverse temperature at which an exponential-power mode sees the same
  /// acceptance behaviour as this spacing prescribes: exp(ell0 * h(beta)).
  /// Identity for Standard spacing. For QuanTA it encodes the effect of the
  /// state-space transformation, which keeps ell * I^(1/2) constant while
  /// the nominal beta grows like beta^(k/2) per rung.
  double effective_beta(double beta) const;
};

/// h by adaptive quadrature of 1/ell; the generic fallback and a cross-check
/// of the closed forms.
double h_by_quadrature(const Spacing& spacing, double x);

struct Ladder {
  std::vector<double> betas;      // 1 = betas[0] < ... < betas[k] = betamax
  std::vector<double> effective;  // Spacing::effective_beta of each rung
  Spacing spacing;
  int dimension = 1;
  bool clamped = false;           // last gap shorter than the recurrence prescribes

  int top() const { return static_cast<int>(betas.size()) - 1; }
  double betamax() const { return betas.back(); }
  double h_max() const { return spacing.h(betamax()); }
};

/// beta_i = beta_{i-1} + ell(beta_{i-1}) / sqrt(d), iterated from 1 until the
/// first step reaching betamax; that rung is clamped to betamax exactly.
/// With align_top the overshooting step is kept instead, so betamax grows
/// to the next recurrence point and no gap is shortened.
Ladder build_ladder(int d, double betamax, const Spacing& spacing, bool align_top = false);

enum class SkewConvention {
  InverseRoot,  // s_i^2 = 2 Phi(-ell0 / (2 sqrt(r_i)))
  Root,         // s_i^2 = 2 Phi(-ell0 sqrt(r_i) / 2)
};

struct SkewConstants {
  double s1 = 1.0;
  double s2 = 1.0;
  double w1 = 0.5;
  double alpha = 0.5;  // w1 s1 / (w1 s1 + w2 s2): chance an excursion from 0 is positive
  double wmin = -1.0;  // -1 / s2
  double wmax = 1.0;   // 1 / s1
};

/// Limiting temperature-move acceptance rate s^2 of a mode with exponent r.
double limiting_acceptance(double r, double ell0, SkewConvention convention = SkewConvention::InverseRoot);

SkewConstants make_skew_constants(double w1, double s1, double s2);

/// Throws std::invalid_argument unless the target has exactly two modes.
SkewConstants skew_constants(const MixtureTarget& target, double ell0,
                             SkewConvention convention = SkewConvention::InverseRoot);

}  // namespace alps
