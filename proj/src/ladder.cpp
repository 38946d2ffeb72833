#include "alps/ladder.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "alps/numerics.hpp"

namespace alps {

void Spacing::validate() const {
  if (!(ell0 > 0.0)) throw std::invalid_argument("ell0 must be > 0");
  if (kind == SpacingKind::QuanTA && !(quanta_k > 2.0))
    throw std::invalid_argument("QuanTA spacing requires exponent k > 2");
}

double Spacing::ell(double beta) const {
  if (kind == SpacingKind::Standard) return ell0 * beta;
  return ell0 * std::pow(beta, 0.5 * quanta_k);
}

double Spacing::h(double x) const {
  const double ax = std::abs(x);
  if (!(ax >= 1.0)) throw std::domain_error("h is defined for |x| >= 1, got " + std::to_string(x));
  if (kind == SpacingKind::Standard) return std::log(ax) / ell0;
  const double e = 0.5 * quanta_k - 1.0;
  return -std::expm1(-e * std::log(ax)) / (ell0 * e);
}

double Spacing::h_inverse(double y) const {
  if (y < 0.0) throw std::domain_error("h takes nonnegative values");
  if (kind == SpacingKind::Standard) return std::exp(ell0 * y);
  const double e = 0.5 * quanta_k - 1.0;
  const double base = 1.0 - ell0 * e * y;
  if (!(base > 0.0)) throw std::domain_error("value exceeds sup h for this QuanTA spacing");
  return std::exp(-std::log(base) / e);
}

double Spacing::effective_beta(double beta) const {
  if (kind == SpacingKind::Standard) return beta;
  return std::exp(ell0 * h(beta));
}

double h_by_quadrature(const Spacing& spacing, double x) {
  const double ax = std::abs(x);
  if (!(ax >= 1.0)) throw std::domain_error("h is defined for |x| >= 1");
  if (ax == 1.0) return 0.0;
  // In v = log u the integrand u / ell(u) is smooth and bounded on both kinds.
  return integrate([&](double v) {
    const double u = std::exp(v);
    return u / spacing.ell(u);
  }, 0.0, std::log(ax), 1e-13);
}

Ladder build_ladder(int d, double betamax, const Spacing& spacing, bool align_top) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(betamax >= 1.0) || !std::isfinite(betamax))
    throw std::domain_error("betamax must be >= 1, got " + std::to_string(betamax));
  spacing.validate();

  Ladder ladder;
  ladder.spacing = spacing;
  ladder.dimension = d;
  ladder.betas.push_back(1.0);
  const double root_d = std::sqrt(static_cast<double>(d));
  constexpr std::size_t kMaxRungs = 50'000'000;
  while (ladder.betas.back() < betamax) {
    const double prev = ladder.betas.back();
    const double next = prev + spacing.ell(prev) / root_d;
    // A step landing within rounding of betamax is taken as exact.
    if (next >= betamax * (1.0 - 1e-12)) {
      const bool overshoot = next > betamax * (1.0 + 1e-12);
      ladder.clamped = overshoot && !align_top;
      ladder.betas.push_back(overshoot && align_top ? next : betamax);
      break;
    }
    ladder.betas.push_back(next);
    if (ladder.betas.size() > kMaxRungs) throw std::runtime_error("ladder exceeds rung limit");
  }
  ladder.effective.reserve(ladder.betas.size());
  for (double b : ladder.betas) ladder.effective.push_back(spacing.effective_beta(b));
  return ladder;
}

double limiting_acceptance(double r, double ell0, SkewConvention convention) {
  const double z = convention == SkewConvention::InverseRoot ? ell0 / (2.0 * std::sqrt(r))
                                                             : 0.5 * ell0 * std::sqrt(r);
  return 2.0 * normal_cdf(-z);
}

SkewConstants make_skew_constants(double w1, double s1, double s2) {
  if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("w1 must lie in (0, 1)");
  if (!(s1 > 0.0 && s2 > 0.0)) throw std::invalid_argument("s1, s2 must be positive");
  SkewConstants c;
  c.s1 = s1;
  c.s2 = s2;
  c.w1 = w1;
  c.alpha = w1 * s1 / (w1 * s1 + (1.0 - w1) * s2);
  c.wmin = -1.0 / s2;
  c.wmax = 1.0 / s1;
  return c;
}

SkewConstants skew_constants(const MixtureTarget& target, double ell0, SkewConvention convention) {
  if (target.modes.size() != 2)
    throw std::invalid_argument("skew constants need exactly two modes (J > 2 is unsupported)");
  const double s1 = std::sqrt(limiting_acceptance(target.modes[0].r, ell0, convention));
  const double s2 = std::sqrt(limiting_acceptance(target.modes[1].r, ell0, convention));
  return make_skew_constants(target.modes[0].weight, s1, s2);
}

}  // namespace alps
