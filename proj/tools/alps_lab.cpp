#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "alps/config.hpp"
#include "alps/dispatch.hpp"
#include "alps/io.hpp"
#include "alps/parallel.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALPS tempering lab"};
  app.fallthrough();
  std::string config_path, out_dir, spacing, dims;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads, dim;
  std::optional<std::int64_t> steps;
  std::optional<std::size_t> replicas;
  std::optional<double> ell0, betamax, quanta_k;
  bool full_grid = false, full_coordinate = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "master seed (else $ALPS_SEED, else the config)");
  app.add_option("--threads", threads, "OpenMP threads");
  app.add_option("--out-dir", out_dir, "output directory (else the config's output.dir)");
  app.add_option("--dim", dim, "dimension d");
  app.add_option("--steps", steps, "chain steps per replica");
  app.add_option("--replicas", replicas, "replica count");
  app.add_option("--ell0", ell0, "spacing constant");
  app.add_option("--betamax", betamax, "largest inverse temperature");
  app.add_option("--spacing", spacing, "standard or quanta")->check(CLI::IsMember({"standard", "quanta"}));
  app.add_option("--quanta-k", quanta_k, "QuanTA exponent k > 2");
  app.add_option("--dims", dims, "comma-separated dimensions for scans");
  app.add_flag("--full-coordinate", full_coordinate, "store and sample every coordinate");
  app.add_flag("--full-grid", full_grid, "appendix-verify: write every (m, n, y) row");
  app.require_subcommand(1, 1);
  for (const char* name : {"simulate", "transform", "compare", "complexity", "excursions", "appendix-verify", "demo"})
    app.add_subcommand(name);
  CLI11_PARSE(app, argc, argv);

  const std::string command_name = app.get_subcommands().front()->get_name();
  const auto command = *alps::parse_command(command_name);
  try {
    nlohmann::json j = config_path.empty() ? alps::default_config_json() : alps::read_json(config_path);
    // Command-line overrides are applied to the JSON so they go through validation.
    if (dim) j["dimension"] = *dim;
    if (ell0) j["ladder"]["ell0"] = *ell0;
    if (betamax) j["ladder"]["betamax"] = *betamax;
    if (!spacing.empty()) j["ladder"]["spacing"] = spacing;
    if (quanta_k) j["ladder"]["quanta_k"] = *quanta_k;
    if (steps) j["simulation"]["steps"] = *steps;
    if (replicas) j["simulation"]["replicas"] = *replicas;
    if (threads) j["simulation"]["threads"] = *threads;
    if (full_coordinate) j["simulation"]["full_coordinate"] = true;
    if (!dims.empty()) j["experiment"]["dims"] = parse_int_list(dims);
    if (full_grid) j["appendix"]["full_grid"] = true;
    if (seed) {
      j["simulation"]["seed"] = *seed;
    } else if (const char* env = std::getenv("ALPS_SEED")) {
      j["simulation"]["seed"] = std::stoull(env);
    }
    alps::RunConfig cfg = alps::parse_config(j);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.threads > 0) alps::set_threads(cfg.threads);

    const auto report = alps::dispatch(cfg, command, cfg.out_dir);
    for (const auto& c : report.checks)
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " = " << c.value << " in [" << c.lower
                << ", " << c.upper << "]\n";
    std::cout << "report: " << (std::filesystem::path(cfg.out_dir) / (report.kind + "_report.json")).string()
              << " (config " << report.config_hash << ", seed " << report.seed << ")\n";
    return report.all_passed() ? 0 : 1;
  } catch (const alps::ConfigError& e) {
    nlohmann::json failure = {{"kind", command_name}, {"error", "config"}, {"messages", e.errors()}};
    std::cerr << failure.dump(2) << '\n';
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json failure = {{"kind", command_name}, {"error", "runtime"}, {"messages", {e.what()}}};
    std::cerr << failure.dump(2) << '\n';
    return 3;
  }
}
