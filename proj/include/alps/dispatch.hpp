#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "alps/config.hpp"
#include "alps/report.hpp"

namespace alps {

enum class Command { Simulate, Transform, Compare, Complexity, Excursions, AppendixVerify, Demo };

std::optional<Command> parse_command(const std::string& name);
std::string to_string(Command command);

/// Runs one experiment on a validated config, writes its CSV/SVG artifacts
/// and <out_dir>/<command>_report.json, and returns the report. The seed is
/// cfg.seed; the report's all_passed() decides the exit status.
ExperimentReport dispatch(const RunConfig& cfg, Command command, const std::filesystem::path& out_dir);

}  // namespace alps
