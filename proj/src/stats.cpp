#include "alps/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alps {

double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  return {d, kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS test needs a nonempty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double rn = std::sqrt(n);
  return {d, kolmogorov_tail((rn + 0.12 + 0.11 / rn) * d)};
}

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::vector<double>>& table) {
  if (table.size() < 2) throw std::invalid_argument("need at least two rows");
  const std::size_t cols = table.front().size();
  for (const auto& row : table)
    if (row.size() != cols) throw std::invalid_argument("ragged contingency table");
  std::vector<double> col_total(cols, 0.0), row_total(table.size(), 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < table.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      col_total[c] += table[r][c];
      row_total[r] += table[r][c];
      total += table[r][c];
    }
  if (total <= 0.0) throw std::invalid_argument("empty contingency table");
  ChiSquareResult out;
  int used_cols = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (col_total[c] <= 0.0) continue;
    ++used_cols;
    for (std::size_t r = 0; r < table.size(); ++r) {
      const double expected = row_total[r] * col_total[c] / total;
      if (expected > 0.0) {
        const double diff = table[r][c] - expected;
        out.statistic += diff * diff / expected;
      }
    }
  }
  out.dof = (used_cols - 1) * static_cast<int>(table.size() - 1);
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

MeanSe mean_se(std::span<const double> values) {
  MeanSe out;
  out.n = static_cast<std::int64_t>(values.size());
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(values.size() - 1) /
                              static_cast<double>(values.size()));
  }
  return out;
}

double binomial_z(std::int64_t k, std::int64_t n, double p) {
  if (n <= 0) return 0.0;
  const double nn = static_cast<double>(n);
  const double sd = std::sqrt(nn * p * (1.0 - p));
  return sd > 0.0 ? (static_cast<double>(k) - nn * p) / sd : 0.0;
}

}  // namespace alps
