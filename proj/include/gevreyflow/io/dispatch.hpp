#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gevreyflow {

struct CliInvocation {
  std::string subcommand;  // conserve | sigma-scaling | damping | iterate | radius | coupled | inequalities | all
  std::optional<std::filesystem::path> config;  // file, or a directory of <scenario>.conf for `all`
  std::filesystem::path out_dir;
  std::vector<std::string> overrides;
  std::optional<long long> seed;
  bool quiet = false;
};

/// Scenario id for a subcommand ("conserve" -> "conservation"); empty if unknown.
std::string scenario_for_subcommand(const std::string& subcommand);

/// Output directory from GEVREYFLOW_OUT, else "gevreyflow-out".
std::filesystem::path default_out_dir();

/// Runs the requested scenario(s), writes their reports under
/// out_dir/<scenario>/ and the registry out_dir/runs.jsonl, and prints one
/// line per verdict to `out`. Returns 0 if every verdict passed, 2 if some
/// verdict failed, 1 if a scenario could not be run (message on `err`).
int dispatch(const CliInvocation& invocation, std::ostream& out, std::ostream& err);

/// Command-line front end: parses flags with CLI11 and calls dispatch.
/// Usage errors print the help text to `err` and return 1.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gevreyflow
