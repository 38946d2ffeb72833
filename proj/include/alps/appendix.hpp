#pragma once

// Reflecting simple symmetric random walk on {0..m}: exact laws, the
// occupation bound P(Y_n = 0) <= 2/sqrt(n) + 1/m, the lifting map from Z, and
// occupation of state 0 by lazy birth-death chains via their jump chains.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "alps/parallel.hpp"
#include "alps/rng.hpp"

namespace alps {

/// Exact law of Y_n for the reflecting walk started at `initial`.
std::vector<double> exact_distribution(int m, int n, int initial);

/// One step of the reflecting-walk law in place (p01 = p_{m,m-1} = 1, interior 1/2).
void reflecting_step(std::vector<double>& dist, std::vector<double>& scratch);

struct RefrwCheck {
  double lhs = 0.0;  // P(Y_n = 0)
  double rhs = 0.0;  // 2/sqrt(n) + 1/m
  bool holds = false;
};

/// Throws std::invalid_argument if n < n0.
RefrwCheck verify_refrw_bound(int m, int n, int initial, int n0 = 16);

struct RefrwSweepCell {
  int m = 0;
  int initial = 0;
  int violations = 0;            // over n in [n0, n_max]
  int first_violation = -1;      // smallest violating n >= 1, or -1
  int tightest_n = 0;            // n in [n0, n_max] with the largest lhs - rhs
  double tightest_lhs = 0.0;
  double tightest_rhs = 0.0;
  double max_mass_error = 0.0;   // max |sum(dist) - 1| along the way
  double max_target_prob = 0.0;  // max P(Y_n = target) over n in [n0, n_max]
  double final_target_prob = 0.0;
};

struct RefrwSweepSpec {
  int m_min = 2;
  int m_max = 100;
  int n0 = 16;
  int n_max = 10'000;
  std::vector<int> initials = {0, 1};
  int target = 0;  // state whose probability is tracked for the fixed-z extension
};

struct RefrwSweepRow {
  int m, n, initial;
  double lhs, rhs;
  bool holds;
};

/// DP sweep over m x initial cells (parallel over cells). `rows`, when
/// non-null, receives every (m, n) row; filled serially after the sweep.
std::vector<RefrwSweepCell> refrw_sweep(const RefrwSweepSpec& spec, Execution policy,
                                        std::vector<RefrwSweepRow>* rows = nullptr);

/// min over integers j of |z - 2 j m|.
std::int64_t lift_map(std::int64_t z, std::int64_t m);

/// Exact path counts of the reflecting walk (weights scaled by 2^n) and of the
/// lifted simple walk on Z folded through lift_map, as decimal strings so the
/// comparison is exact arbitrary-precision equality.
std::vector<std::string> reflecting_counts(int m, int n, int initial);
std::vector<std::string> lifted_counts(int m, int n, int initial);

template <class T>
struct JumpDecomposition {
  std::vector<T> jump_chain;
  std::vector<std::int64_t> multiplicities;
};

template <class T>
JumpDecomposition<T> jump_decompose(const std::vector<T>& path) {
  if (path.empty()) throw std::invalid_argument("jump_decompose needs a nonempty path");
  JumpDecomposition<T> out;
  for (const auto& s : path) {
    if (!out.jump_chain.empty() && out.jump_chain.back() == s) {
      ++out.multiplicities.back();
    } else {
      out.jump_chain.push_back(s);
      out.multiplicities.push_back(1);
    }
  }
  return out;
}

template <class T>
std::vector<T> expand(const JumpDecomposition<T>& d) {
  std::vector<T> path;
  for (std::size_t k = 0; k < d.jump_chain.size(); ++k)
    path.insert(path.end(), static_cast<std::size_t>(d.multiplicities[k]), d.jump_chain[k]);
  return path;
}

struct BirthDeathChain {
  int m = 1;
  std::vector<double> hold;  // p_ii, size m + 1
  double a = 0.0;            // every p_ii <= 1 - a

  /// Uniform holding probability p at every state.
  static BirthDeathChain lazy(int m, double p);
  void validate() const;
  int step(int state, Engine& rng) const;
};

struct OccupationResult {
  std::vector<double> fractions;  // N0 / n per replica
  double mean = 0.0;
  double std_error = 0.0;
};

/// N0 = #{0 <= i < n : X_i = 0} for chains started at `initial`; replica i
/// uses stream_seed(master, i).
OccupationResult occupation_experiment(const BirthDeathChain& chain, int n, std::size_t replicas,
                                       std::uint64_t master, int initial = 0,
                                       Execution policy = Execution::Parallel);

}  // namespace alps
