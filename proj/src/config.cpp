#include "alps/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace alps {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
  return os.str();
}

class Reader {
 public:
  std::vector<std::string> errors;

  void keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key())) errors.push_back("unknown key '" + where + it.key() + "'");
  }

  bool object(const json& parent, const char* key, const std::string& where) {
    if (!parent.contains(key)) return false;
    if (!parent.at(key).is_object()) {
      errors.push_back("'" + where + key + "' must be an object");
      return false;
    }
    return true;
  }

  void number(const json& obj, const char* key, const std::string& where, double& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) errors.push_back("'" + where + key + "' must be a number");
    else out = v.get<double>();
  }

  template <class I>
  void integer(const json& obj, const char* key, const std::string& where, I& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (v.is_number_integer() || v.is_number_unsigned()) {
      out = v.get<I>();
    } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
      out = static_cast<I>(v.get<double>());
    } else {
      errors.push_back("'" + where + key + "' must be an integer");
    }
  }

  void boolean(const json& obj, const char* key, const std::string& where, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_boolean()) errors.push_back("'" + where + key + "' must be true or false");
    else out = obj.at(key).get<bool>();
  }

  void string(const json& obj, const char* key, const std::string& where, std::string& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_string()) errors.push_back("'" + where + key + "' must be a string");
    else out = obj.at(key).get<std::string>();
  }

  template <class T>
  void list(const json& obj, const char* key, const std::string& where, std::vector<T>& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_array()) {
      errors.push_back("'" + where + key + "' must be an array");
      return;
    }
    std::vector<T> tmp;
    for (const auto& e : v) {
      if (!e.is_number() || (std::is_integral_v<T> && !e.is_number_integer())) {
        errors.push_back("'" + where + key + "' has a non-" +
                         (std::is_integral_v<T> ? "integer" : "numeric") + " entry");
        return;
      }
      tmp.push_back(e.get<T>());
    }
    out = std::move(tmp);
  }

  void require(bool ok, const std::string& message) {
    if (!ok) errors.push_back(message);
  }
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error("invalid config: " + join(errors)), errors_(std::move(errors)) {}

double ExperimentSettings::tolerance(const std::string& name, double fallback) const {
  if (tolerances.contains(name) && tolerances.at(name).is_number()) return tolerances.at(name).get<double>();
  return fallback;
}

RunConfig parse_config(const json& j) {
  Reader rd;
  RunConfig c;
  if (!j.is_object()) throw ConfigError({"config must be a JSON object"});
  rd.keys(j, "", {"dimension", "modes", "ladder", "simulation", "experiment", "appendix", "demo", "output"});

  if (!j.contains("dimension")) rd.errors.push_back("missing required key 'dimension'");
  rd.integer(j, "dimension", "", c.target.dimension);
  rd.require(c.target.dimension >= 1, "dimension must be >= 1");

  if (!j.contains("modes")) {
    rd.errors.push_back("missing required key 'modes'");
  } else if (!j.at("modes").is_array()) {
    rd.errors.push_back("'modes' must be an array");
  } else {
    std::size_t i = 0;
    for (const auto& m : j.at("modes")) {
      const std::string where = "modes[" + std::to_string(i++) + "].";
      if (!m.is_object()) {
        rd.errors.push_back("'" + where + "' must be an object");
        continue;
      }
      rd.keys(m, where, {"lambda", "r", "weight", "center"});
      ModeSpec s;
      if (!m.contains("weight")) rd.errors.push_back("missing required key '" + where + "weight'");
      rd.number(m, "lambda", where, s.lambda);
      rd.number(m, "r", where, s.r);
      rd.number(m, "weight", where, s.weight);
      rd.number(m, "center", where, s.center);
      rd.require(s.lambda > 0.0, where + "lambda must be > 0");
      rd.require(s.r > 0.0, where + "r must be > 0");
      rd.require(s.weight > 0.0 && s.weight < 1.0, where + "weight must lie in (0, 1)");
      c.target.modes.push_back(s);
    }
    rd.require(c.target.modes.size() >= 2, "at least two modes are required");
    double sum = 0.0;
    for (const auto& m : c.target.modes) sum += m.weight;
    if (!c.target.modes.empty()) rd.require(std::abs(sum - 1.0) <= 1e-9, "weights must sum to 1");
  }

  if (rd.object(j, "ladder", "")) {
    const auto& l = j.at("ladder");
    rd.keys(l, "ladder.", {"ell0", "spacing", "quanta_k", "betamax", "betamax_factor", "align_top", "skew_convention"});
    rd.number(l, "ell0", "ladder.", c.spacing.ell0);
    std::string kind = "standard";
    rd.string(l, "spacing", "ladder.", kind);
    if (kind == "standard") c.spacing.kind = SpacingKind::Standard;
    else if (kind == "quanta") c.spacing.kind = SpacingKind::QuanTA;
    else rd.errors.push_back("ladder.spacing must be \"standard\" or \"quanta\"");
    rd.number(l, "quanta_k", "ladder.", c.spacing.quanta_k);
    if (l.contains("betamax") && !l.at("betamax").is_null()) {
      double b = 0.0;
      rd.number(l, "betamax", "ladder.", b);
      c.betamax = b;
      rd.require(b >= 1.0, "betamax must be >= 1");
    }
    rd.number(l, "betamax_factor", "ladder.", c.betamax_factor);
    rd.boolean(l, "align_top", "ladder.", c.align_top);
    std::string conv = "inverse_root";
    rd.string(l, "skew_convention", "ladder.", conv);
    if (conv == "inverse_root") c.convention = SkewConvention::InverseRoot;
    else if (conv == "root") c.convention = SkewConvention::Root;
    else rd.errors.push_back("ladder.skew_convention must be \"inverse_root\" or \"root\"");
  }
  rd.require(c.spacing.ell0 > 0.0, "ell0 must be > 0");
  if (c.spacing.kind == SpacingKind::QuanTA) rd.require(c.spacing.quanta_k > 2.0, "QuanTA requires k > 2");
  rd.require(c.betamax_factor > 0.0, "betamax_factor must be > 0");
  if (!c.betamax) rd.require(c.betamax_for(c.target.dimension) >= 1.0, "betamax must be >= 1");

  if (rd.object(j, "simulation", "")) {
    const auto& s = j.at("simulation");
    rd.keys(s, "simulation.", {"steps", "replicas", "seed", "full_coordinate", "threads"});
    rd.integer(s, "steps", "simulation.", c.steps);
    rd.integer(s, "replicas", "simulation.", c.replicas);
    rd.integer(s, "seed", "simulation.", c.seed);
    rd.boolean(s, "full_coordinate", "simulation.", c.full_coordinate);
    rd.integer(s, "threads", "simulation.", c.threads);
  }
  rd.require(c.steps >= 0, "steps must be >= 0");
  rd.require(c.threads >= 0, "threads must be >= 0");

  auto& e = c.experiment;
  if (rd.object(j, "experiment", "")) {
    const auto& x = j.at("experiment");
    rd.keys(x, "experiment.", {"kind", "dims", "t_values", "reference_dt", "excursion_level",
                               "round_trip_budget", "reference_horizon", "min_proposals", "tolerances"});
    rd.string(x, "kind", "experiment.", e.kind);
    rd.list(x, "dims", "experiment.", e.dims);
    rd.list(x, "t_values", "experiment.", e.t_values);
    rd.number(x, "reference_dt", "experiment.", e.reference_dt);
    rd.number(x, "excursion_level", "experiment.", e.excursion_level);
    rd.number(x, "round_trip_budget", "experiment.", e.round_trip_budget);
    rd.number(x, "reference_horizon", "experiment.", e.reference_horizon);
    rd.integer(x, "min_proposals", "experiment.", e.min_proposals);
    if (x.contains("tolerances")) {
      const auto& t = x.at("tolerances");
      if (!t.is_object()) {
        rd.errors.push_back("'experiment.tolerances' must be an object");
      } else {
        for (auto it = t.begin(); it != t.end(); ++it)
          rd.require(it.value().is_number(), "tolerance '" + it.key() + "' must be a number");
        e.tolerances = t;
      }
    }
  }
  for (int d : e.dims) rd.require(d >= 1, "experiment.dims entries must be >= 1");
  for (std::size_t i = 0; i < e.t_values.size(); ++i) {
    rd.require(e.t_values[i] >= 0.0, "experiment.t_values must be >= 0");
    if (i > 0) rd.require(e.t_values[i] > e.t_values[i - 1], "experiment.t_values must be ascending");
  }
  rd.require(e.reference_dt > 0.0 && e.reference_dt < 1.0, "experiment.reference_dt must lie in (0, 1)");
  rd.require(e.excursion_level >= 0.0 && e.excursion_level <= 1.0,
             "experiment.excursion_level must lie in [0, 1]");
  rd.require(e.round_trip_budget > 0.0, "experiment.round_trip_budget must be > 0");
  rd.require(e.reference_horizon > 0.0, "experiment.reference_horizon must be > 0");
  rd.require(e.min_proposals >= 1, "experiment.min_proposals must be >= 1");

  if (rd.object(j, "appendix", "")) {
    const auto& a = j.at("appendix");
    rd.keys(a, "appendix.", {"m_min", "m_max", "n0", "n_max", "initials", "target", "full_grid"});
    rd.integer(a, "m_min", "appendix.", c.appendix.m_min);
    rd.integer(a, "m_max", "appendix.", c.appendix.m_max);
    rd.integer(a, "n0", "appendix.", c.appendix.n0);
    rd.integer(a, "n_max", "appendix.", c.appendix.n_max);
    rd.list(a, "initials", "appendix.", c.appendix.initials);
    rd.integer(a, "target", "appendix.", c.appendix.target);
    rd.boolean(a, "full_grid", "appendix.", c.appendix_full_grid);
  }
  rd.require(c.appendix.m_min >= 1 && c.appendix.m_max >= c.appendix.m_min, "appendix m range is empty");
  rd.require(c.appendix.n0 >= 1 && c.appendix.n_max >= c.appendix.n0, "appendix n range is empty");

  if (rd.object(j, "demo", "")) {
    const auto& d = j.at("demo");
    rd.keys(d, "demo.", {"dimension", "betamax", "ell0", "steps", "table_points", "export_every",
                         "grid_lo", "grid_hi", "grid_step", "batches"});
    rd.integer(d, "dimension", "demo.", c.demo.dimension);
    rd.number(d, "betamax", "demo.", c.demo.betamax);
    rd.number(d, "ell0", "demo.", c.demo.ell0);
    rd.integer(d, "steps", "demo.", c.demo.steps);
    rd.integer(d, "table_points", "demo.", c.demo.table_points);
    rd.integer(d, "export_every", "demo.", c.demo.export_every);
    rd.number(d, "grid_lo", "demo.", c.demo.grid_lo);
    rd.number(d, "grid_hi", "demo.", c.demo.grid_hi);
    rd.number(d, "grid_step", "demo.", c.demo.grid_step);
    rd.integer(d, "batches", "demo.", c.demo.batches);
  }
  rd.require(c.demo.dimension >= 1, "demo.dimension must be >= 1");
  rd.require(c.demo.betamax >= 1.0, "demo.betamax must be >= 1");
  rd.require(c.demo.steps >= 1, "demo.steps must be >= 1");
  rd.require(c.demo.table_points >= 16, "demo.table_points must be >= 16");
  rd.require(c.demo.export_every >= 1, "demo.export_every must be >= 1");
  rd.require(c.demo.grid_step > 0.0 && c.demo.grid_hi > c.demo.grid_lo, "demo grid is empty");
  rd.require(c.demo.batches >= 2, "demo.batches must be >= 2");

  if (rd.object(j, "output", "")) {
    const auto& o = j.at("output");
    rd.keys(o, "output.", {"dir"});
    rd.string(o, "dir", "output.", c.out_dir);
  }

  if (!rd.errors.empty()) throw ConfigError(rd.errors);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw ConfigError({std::string("config is not valid JSON: ") + ex.what()});
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json modes = json::array();
  for (const auto& m : c.target.modes)
    modes.push_back({{"lambda", m.lambda}, {"r", m.r}, {"weight", m.weight}, {"center", m.center}});
  return {
      {"dimension", c.target.dimension},
      {"modes", modes},
      {"ladder",
       {{"ell0", c.spacing.ell0},
        {"spacing", c.spacing.kind == SpacingKind::Standard ? "standard" : "quanta"},
        {"quanta_k", c.spacing.quanta_k},
        {"betamax", c.betamax_for(c.target.dimension)},
        {"betamax_factor", c.betamax_factor},
        {"align_top", c.align_top},
        {"skew_convention", c.convention == SkewConvention::InverseRoot ? "inverse_root" : "root"}}},
      {"simulation",
       {{"steps", c.steps},
        {"replicas", c.replicas},
        {"seed", c.seed},
        {"full_coordinate", c.full_coordinate},
        {"threads", c.threads}}},
      {"experiment",
       {{"kind", c.experiment.kind},
        {"dims", c.experiment.dims},
        {"t_values", c.experiment.t_values},
        {"reference_dt", c.experiment.reference_dt},
        {"excursion_level", c.experiment.excursion_level},
        {"round_trip_budget", c.experiment.round_trip_budget},
        {"reference_horizon", c.experiment.reference_horizon},
        {"min_proposals", c.experiment.min_proposals},
        {"tolerances", c.experiment.tolerances}}},
      {"appendix",
       {{"m_min", c.appendix.m_min},
        {"m_max", c.appendix.m_max},
        {"n0", c.appendix.n0},
        {"n_max", c.appendix.n_max},
        {"initials", c.appendix.initials},
        {"target", c.appendix.target},
        {"full_grid", c.appendix_full_grid}}},
      {"demo",
       {{"dimension", c.demo.dimension},
        {"betamax", c.demo.betamax},
        {"ell0", c.demo.ell0},
        {"steps", c.demo.steps},
        {"table_points", c.demo.table_points},
        {"export_every", c.demo.export_every},
        {"grid_lo", c.demo.grid_lo},
        {"grid_hi", c.demo.grid_hi},
        {"grid_step", c.demo.grid_step},
        {"batches", c.demo.batches}}},
      {"output", {{"dir", c.out_dir}}},
  };
}

json default_config_json(int d) {
  return {{"dimension", d},
          {"modes", json::array({{{"lambda", 1.0}, {"r", 2.0}, {"weight", 0.5}},
                                 {{"lambda", 1.0}, {"r", 2.0}, {"weight", 0.5}}})}};
}

}  // namespace alps
