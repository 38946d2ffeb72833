#pragma once

#include <cmath>
#include <functional>

namespace alps {

inline constexpr double kSqrt2 = 1.41421356237309504880;

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

/// log Phi(z), accurate in the lower tail where Phi underflows.
double log_normal_cdf(double z);

inline double normal_pdf(double z) {
  return 0.3989422804014326779 * std::exp(-0.5 * z * z);
}

/// Adaptive Gauss-Kronrod (15 point) on [a, b]. Throws std::runtime_error if the
/// requested relative tolerance cannot be met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, unsigned max_depth = 30);

}  // namespace alps
