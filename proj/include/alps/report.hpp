#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace alps {

/// A point estimate; every estimate records how many replicas (or
/// independent units) it rests on and its standard error.
struct Estimate {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t replicas = 0;

  bool operator==(const Estimate&) const = default;
};

/// Pass/fail against a tolerance band declared before the run.
struct Check {
  std::string name;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool passed = false;

  bool operator==(const Check&) const = default;
};

struct ExperimentReport {
  std::string kind;
  nlohmann::json config = nlohmann::json::object();
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;  // derived sub-seeds, when the experiment uses several
  std::vector<Estimate> estimates;
  std::vector<Check> checks;
  nlohmann::json tables = nlohmann::json::object();
  std::vector<std::string> warnings;

  Estimate& add_estimate(std::string name, double value, double std_error, std::int64_t replicas);
  /// Records a check: passed iff lower <= value <= upper.
  Check& add_check(std::string name, double value, double lower, double upper);
  bool all_passed() const;
  const Estimate* find_estimate(const std::string& name) const;
  const Check* find_check(const std::string& name) const;

  bool operator==(const ExperimentReport&) const = default;
};

/// FNV-1a 64 of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

void to_json(nlohmann::json& j, const Estimate& e);
void from_json(const nlohmann::json& j, Estimate& e);
void to_json(nlohmann::json& j, const Check& c);
void from_json(const nlohmann::json& j, Check& c);
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);

}  // namespace alps
