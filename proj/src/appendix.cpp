#include "alps/appendix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numeric>
#include <string>

namespace alps {

using boost::multiprecision::cpp_int;

void reflecting_step(std::vector<double>& dist, std::vector<double>& scratch) {
  const std::size_t size = dist.size();
  scratch.assign(size, 0.0);
  if (size == 1) {
    scratch[0] = dist[0];
  } else {
    const std::size_t m = size - 1;
    scratch[1] += dist[0];
    scratch[m - 1] += dist[m];
    for (std::size_t i = 1; i < m; ++i) {
      scratch[i - 1] += 0.5 * dist[i];
      scratch[i + 1] += 0.5 * dist[i];
    }
  }
  dist.swap(scratch);
}

std::vector<double> exact_distribution(int m, int n, int initial) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (initial < 0 || initial > m) throw std::invalid_argument("initial state outside {0..m}");
  std::vector<double> dist(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> scratch;
  dist[static_cast<std::size_t>(initial)] = 1.0;
  for (int i = 0; i < n; ++i) reflecting_step(dist, scratch);
  return dist;
}

RefrwCheck verify_refrw_bound(int m, int n, int initial, int n0) {
  if (n < n0) throw std::invalid_argument("n is below the configured threshold n0");
  RefrwCheck c;
  c.lhs = exact_distribution(m, n, initial)[0];
  c.rhs = 2.0 / std::sqrt(static_cast<double>(n)) + 1.0 / static_cast<double>(m);
  c.holds = c.lhs <= c.rhs;
  return c;
}

std::vector<RefrwSweepCell> refrw_sweep(const RefrwSweepSpec& spec, Execution policy,
                                        std::vector<RefrwSweepRow>* rows) {
  if (spec.m_min < 1 || spec.m_max < spec.m_min) throw std::invalid_argument("bad m range");
  if (spec.n0 < 1 || spec.n_max < spec.n0) throw std::invalid_argument("bad n range");
  struct Job {
    int m, initial;
  };
  std::vector<Job> jobs;
  for (int m = spec.m_min; m <= spec.m_max; ++m)
    for (int y : spec.initials)
      if (y >= 0 && y <= m) jobs.push_back({m, y});

  std::vector<RefrwSweepCell> cells(jobs.size());
  std::vector<std::vector<RefrwSweepRow>> cell_rows(rows != nullptr ? jobs.size() : 0);
  for_each_index(jobs.size(), policy, [&](std::size_t j) {
    const auto [m, y] = jobs[j];
    RefrwSweepCell cell;
    cell.m = m;
    cell.initial = y;
    std::vector<double> dist(static_cast<std::size_t>(m) + 1, 0.0), scratch;
    dist[static_cast<std::size_t>(y)] = 1.0;
    double worst = -1e300;
    const auto target = static_cast<std::size_t>(std::min(spec.target, m));
    for (int n = 1; n <= spec.n_max; ++n) {
      reflecting_step(dist, scratch);
      const double lhs = dist[0];
      const double rhs = 2.0 / std::sqrt(static_cast<double>(n)) + 1.0 / static_cast<double>(m);
      if (lhs > rhs && cell.first_violation < 0) cell.first_violation = n;
      if (n < spec.n0) continue;
      const double mass = std::accumulate(dist.begin(), dist.end(), 0.0);
      cell.max_mass_error = std::max(cell.max_mass_error, std::abs(mass - 1.0));
      cell.max_target_prob = std::max(cell.max_target_prob, dist[target]);
      if (lhs > rhs) ++cell.violations;
      if (lhs - rhs > worst) {
        worst = lhs - rhs;
        cell.tightest_n = n;
        cell.tightest_lhs = lhs;
        cell.tightest_rhs = rhs;
      }
      if (rows != nullptr) cell_rows[j].push_back({m, n, y, lhs, rhs, lhs <= rhs});
    }
    cell.final_target_prob = dist[target];
    cells[j] = cell;
  });
  if (rows != nullptr)
    for (auto& r : cell_rows) rows->insert(rows->end(), r.begin(), r.end());
  return cells;
}

std::int64_t lift_map(std::int64_t z, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const std::int64_t period = 2 * m;
  std::int64_t r = z % period;
  if (r < 0) r += period;
  return std::min(r, period - r);
}

namespace {

std::vector<std::string> to_strings(const std::vector<cpp_int>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

}  // namespace

std::vector<std::string> reflecting_counts(int m, int n, int initial) {
  if (m < 1 || n < 0 || initial < 0 || initial > m) throw std::invalid_argument("bad arguments");
  const auto size = static_cast<std::size_t>(m) + 1;
  std::vector<cpp_int> c(size), next(size);
  c[static_cast<std::size_t>(initial)] = 1;
  for (int s = 0; s < n; ++s) {
    for (auto& x : next) x = 0;
    next[1] += 2 * c[0];
    next[size - 2] += 2 * c[size - 1];
    for (std::size_t i = 1; i + 1 < size; ++i) {
      next[i - 1] += c[i];
      next[i + 1] += c[i];
    }
    c.swap(next);
  }
  return to_strings(c);
}

std::vector<std::string> lifted_counts(int m, int n, int initial) {
  if (m < 1 || n < 0 || initial < 0 || initial > m) throw std::invalid_argument("bad arguments");
  // Simple walk on Z: the number of n-step paths from y to y + 2k - n is C(n, k).
  std::vector<cpp_int> folded(static_cast<std::size_t>(m) + 1);
  cpp_int binom = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    const std::int64_t z = initial + 2 * static_cast<std::int64_t>(k) - n;
    folded[static_cast<std::size_t>(lift_map(z, m))] += binom;
  }
  return to_strings(folded);
}

BirthDeathChain BirthDeathChain::lazy(int m, double p) {
  BirthDeathChain c;
  c.m = m;
  c.hold.assign(static_cast<std::size_t>(m) + 1, p);
  c.a = 1.0 - p;
  return c;
}

void BirthDeathChain::validate() const {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (hold.size() != static_cast<std::size_t>(m) + 1)
    throw std::invalid_argument("need one holding probability per state");
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("a must lie in (0, 1]");
  for (double p : hold)
    if (!(p >= 0.0 && p <= 1.0 - a + 1e-15))
      throw std::invalid_argument("holding probability outside [0, 1 - a]");
}

int BirthDeathChain::step(int state, Engine& rng) const {
  const double u = uniform01(rng);
  const double p = hold[static_cast<std::size_t>(state)];
  if (u < p) return state;
  if (state == 0) return 1;
  if (state == m) return m - 1;
  return u < p + 0.5 * (1.0 - p) ? state + 1 : state - 1;
}

OccupationResult occupation_experiment(const BirthDeathChain& chain, int n, std::size_t replicas,
                                       std::uint64_t master, int initial, Execution policy) {
  chain.validate();
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (initial < 0 || initial > chain.m) throw std::invalid_argument("initial state outside {0..m}");
  OccupationResult out;
  out.fractions.resize(replicas);
  for_each_index(replicas, policy, [&](std::size_t r) {
    Engine rng = make_engine(stream_seed(master, r));
    int x = initial;
    std::int64_t visits = 0;
    for (int i = 0; i < n; ++i) {
      if (x == 0) ++visits;
      x = chain.step(x, rng);
    }
    out.fractions[r] = static_cast<double>(visits) / static_cast<double>(n);
  });
  double sum = 0.0, sq = 0.0;
  for (double f : out.fractions) {
    sum += f;
    sq += f * f;
  }
  const double k = static_cast<double>(replicas);
  out.mean = sum / k;
  out.std_error = replicas > 1 ? std::sqrt(std::max(0.0, sq / k - out.mean * out.mean) / (k - 1.0)) : 0.0;
  return out;
}

}  // namespace alps
