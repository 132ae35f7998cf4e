#include "gevreyflow/io/dispatch.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>

#include "CLI11.hpp"
#include "gevreyflow/error.hpp"
#include "gevreyflow/harness/scenarios.hpp"
#include "gevreyflow/io/config_file.hpp"
#include "gevreyflow/io/report_writer.hpp"

namespace gevreyflow {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"conserve", "conservation"}, {"sigma-scaling", "sigma-scaling"}, {"damping", "damping"},
    {"iterate", "iterate"},       {"radius", "radius"},               {"coupled", "coupled"},
    {"inequalities", "inequalities"}};

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string verdict_line(const std::string& scenario, const Verdict& v) {
  std::string band;
  if (std::isinf(v.lower)) {
    band = "<= " + short_number(v.upper);
  } else if (std::isinf(v.upper)) {
    band = ">= " + short_number(v.lower);
  } else {
    band = "in [" + short_number(v.lower) + ", " + short_number(v.upper) + "]";
  }
  return std::string(v.passed ? "PASS" : "FAIL") + "  " + scenario + "/" + v.name + "  " + short_number(v.value) +
         " " + band;
}

ScenarioConfig resolve_config(const CliInvocation& inv, const std::string& scenario) {
  std::vector<std::string> overrides = inv.overrides;
  if (inv.seed) overrides.push_back("scenario.seed=" + std::to_string(*inv.seed));
  if (!inv.config) return config_with_overrides(scenario, overrides);
  if (fs::is_directory(*inv.config)) {
    const fs::path file = *inv.config / (scenario + ".conf");
    if (fs::exists(file)) return parse_config(file, scenario, overrides);
    return config_with_overrides(scenario, overrides);
  }
  return parse_config(*inv.config, scenario, overrides);
}

}  // namespace

std::string scenario_for_subcommand(const std::string& subcommand) {
  for (const auto& [cmd, id] : kSubcommands) {
    if (cmd == subcommand) return id;
  }
  return {};
}

fs::path default_out_dir() {
  const char* env = std::getenv("GEVREYFLOW_OUT");
  return env != nullptr && *env != '\0' ? fs::path(env) : fs::path("gevreyflow-out");
}

int dispatch(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> scenarios;
  if (inv.subcommand == "all") {
    scenarios = scenario_ids();
    if (inv.config && !fs::is_directory(*inv.config)) {
      err << "error: with 'all', --config must name a directory of <scenario>.conf files\n";
      return 1;
    }
  } else {
    const std::string id = scenario_for_subcommand(inv.subcommand);
    if (id.empty()) {
      err << "error: unknown subcommand '" << inv.subcommand << "'\n";
      return 1;
    }
    scenarios.push_back(id);
  }

  const fs::path out_dir = inv.out_dir.empty() ? default_out_dir() : inv.out_dir;
  const fs::path registry = out_dir / "runs.jsonl";
  bool any_error = false, any_failure = false;
  for (const auto& id : scenarios) {
    try {
      const ScenarioConfig cfg = resolve_config(inv, id);
      const ExperimentReport report = run_scenario(cfg);
      write_report(report, out_dir / id, registry);
      for (const auto& v : report.verdicts) {
        if (!inv.quiet || !v.passed) out << verdict_line(id, v) << '\n';
      }
      if (!inv.quiet) {
        for (const auto& w : report.warnings) out << "note  " << id << ": " << w << '\n';
      }
      any_failure = any_failure || !report.passed();
    } catch (const std::exception& e) {
      err << "error: " << id << ": " << e.what() << '\n';
      any_error = true;
    }
  }
  if (!inv.quiet) out << "reports written to " << out_dir.string() << '\n';
  if (any_error) return 1;
  return any_failure ? 2 : 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gevrey-class diagnostics for mKdV-type equations", "gevreyflow"};
  app.require_subcommand(1, 1);

  CliInvocation inv;
  std::string config, out_dir;
  long long seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "config file (a directory of <scenario>.conf files for 'all')");
    sub->add_option("--out", out_dir, "output directory (default: $GEVREYFLOW_OUT or ./gevreyflow-out)");
    sub->add_option("--set", inv.overrides, "override section.key=value (repeatable)")->take_all();
    sub->add_option("--seed", seed, "random seed (scenario.seed)");
    sub->add_flag("--quiet", inv.quiet, "print only failing verdicts");
  };
  for (const auto& [cmd, id] : kSubcommands) add_common(app.add_subcommand(cmd, "run the " + id + " scenario"));
  add_common(app.add_subcommand("all", "run every scenario in sequence"));

  std::vector<std::string> argv(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  inv.subcommand = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--config") > 0) inv.config = config;
  if (sub->count("--out") > 0) inv.out_dir = out_dir;
  if (sub->count("--seed") > 0) inv.seed = seed;
  return dispatch(inv, out, err);
}

}  // namespace gevreyflow
