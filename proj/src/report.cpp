#include "alps/report.hpp"

#include <cstdio>

namespace alps {

Estimate& ExperimentReport::add_estimate(std::string name, double value, double std_error,
                                         std::int64_t replicas) {
  estimates.push_back({std::move(name), value, std_error, replicas});
  return estimates.back();
}

Check& ExperimentReport::add_check(std::string name, double value, double lower, double upper) {
  checks.push_back({std::move(name), value, lower, upper, value >= lower && value <= upper});
  return checks.back();
}

bool ExperimentReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const Estimate* ExperimentReport::find_estimate(const std::string& name) const {
  for (const auto& e : estimates)
    if (e.name == name) return &e;
  return nullptr;
}

const Check* ExperimentReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void to_json(nlohmann::json& j, const Estimate& e) {
  j = {{"name", e.name}, {"value", e.value}, {"std_error", e.std_error}, {"replicas", e.replicas}};
}

void from_json(const nlohmann::json& j, Estimate& e) {
  j.at("name").get_to(e.name);
  j.at("value").get_to(e.value);
  j.at("std_error").get_to(e.std_error);
  j.at("replicas").get_to(e.replicas);
}

void to_json(nlohmann::json& j, const Check& c) {
  j = {{"name", c.name}, {"value", c.value}, {"lower", c.lower}, {"upper", c.upper}, {"passed", c.passed}};
}

void from_json(const nlohmann::json& j, Check& c) {
  j.at("name").get_to(c.name);
  j.at("value").get_to(c.value);
  j.at("lower").get_to(c.lower);
  j.at("upper").get_to(c.upper);
  j.at("passed").get_to(c.passed);
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = {{"kind", r.kind},         {"config", r.config},       {"config_hash", r.config_hash},
       {"seed", r.seed},         {"seeds", r.seeds},         {"estimates", r.estimates},
       {"checks", r.checks},     {"tables", r.tables},       {"warnings", r.warnings},
       {"all_passed", r.all_passed()}};
}

void from_json(const nlohmann::json& j, ExperimentReport& r) {
  j.at("kind").get_to(r.kind);
  r.config = j.at("config");
  j.at("config_hash").get_to(r.config_hash);
  j.at("seed").get_to(r.seed);
  j.at("seeds").get_to(r.seeds);
  j.at("estimates").get_to(r.estimates);
  j.at("checks").get_to(r.checks);
  r.tables = j.at("tables");
  j.at("warnings").get_to(r.warnings);
}

}  // namespace alps
