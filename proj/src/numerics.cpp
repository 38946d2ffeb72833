#include "alps/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace alps {

double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(normal_cdf(z));
  // Asymptotic series for the Mills ratio; ample accuracy below -30.
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(-z) - 0.91893853320467274178 + std::log(series);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 unsigned max_depth) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > 100.0 * rel_tol * std::max(l1, 1e-300)) {
    throw std::runtime_error("quadrature failed on [" + std::to_string(a) + ", " +
                             std::to_string(b) + "], error estimate " + std::to_string(error));
  }
  return value;
}

}  // namespace alps
