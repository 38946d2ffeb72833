#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace alps {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov distribution tail P(K > x) = 2 sum (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_tail(double x);

/// Two-sample Kolmogorov-Smirnov test with the effective-size correction of
/// Stephens for the p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample test against a continuous CDF.
KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, int dof);

/// Homogeneity test of a rows x columns contingency table. Columns whose
/// total is zero are dropped before counting degrees of freedom.
ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& table);

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
};

MeanSe mean_se(std::span<const double> values);

/// z-score of k successes in n Bernoulli(p) trials.
double binomial_z(std::int64_t k, std::int64_t n, double p);

}  // namespace alps
