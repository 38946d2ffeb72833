#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "alps/appendix.hpp"
#include "alps/demo.hpp"
#include "alps/ladder.hpp"
#include "alps/model.hpp"

namespace alps {

/// Every validation problem found in a config, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ExperimentSettings {
  std::string kind;
  std::vector<int> dims;
  std::vector<double> t_values{0.5, 1.0, 2.0};
  double reference_dt = 1e-4;
  double excursion_level = 0.5;  // fraction of min(wmax, |wmin|)
  double round_trip_budget = 200.0;
  double reference_horizon = 5000.0;  // skew-BM occupation run length, per walker
  std::int64_t min_proposals = 1000;
  /// Named tolerance bands; the experiments read what they need and fall
  /// back to their built-in defaults.
  nlohmann::json tolerances = nlohmann::json::object();

  double tolerance(const std::string& name, double fallback) const;
};

struct RunConfig {
  MixtureTarget target;
  Spacing spacing;
  std::optional<double> betamax;  // default: betamax_factor * d
  double betamax_factor = 1.0;
  bool align_top = false;
  SkewConvention convention = SkewConvention::InverseRoot;

  std::int64_t steps = 100000;
  std::size_t replicas = 0;  // 0: the subcommand's default
  std::uint64_t seed = 1;
  bool full_coordinate = false;
  int threads = 0;  // 0: OpenMP default

  ExperimentSettings experiment;
  RefrwSweepSpec appendix;
  bool appendix_full_grid = false;
  DemoSpec demo;
  std::string out_dir = "out";

  double betamax_for(int d) const { return betamax ? *betamax : betamax_factor * d; }
  Ladder ladder() const { return build_ladder(target.dimension, betamax_for(target.dimension), spacing, align_top); }
};

/// Validates and fills defaults. Throws ConfigError listing all problems;
/// unknown keys are errors.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Normalised form with every default explicit; the basis of the config hash.
nlohmann::json to_json(const RunConfig& c);

/// A valid two-Gaussian-mode config at dimension d.
nlohmann::json default_config_json(int d = 16);

}  // namespace alps
