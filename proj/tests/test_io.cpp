#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gevreyflow/error.hpp"
#include "gevreyflow/harness/scenarios.hpp"
#include "gevreyflow/io/config_file.hpp"
#include "gevreyflow/io/dispatch.hpp"
#include "gevreyflow/io/report_writer.hpp"
#include "gevreyflow/io/svg.hpp"
#include "json.hpp"

using namespace gevreyflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("gevreyflow_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "gevreyflow");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

ExperimentReport toy_report() {
  ExperimentReport r;
  r.scenario = "conservation";
  r.config = ScenarioConfig::defaults("conservation");
  r.series.push_back({"M_sigma", {"t", "M"}, {{0, 1}, {0.5, 0.75}, {1, 0.5}}});
  r.verdicts.push_back({"v", true, 0.1, -INFINITY, 1, "tolerances.conservation", ""});
  r.plots.push_back({"m", "M_sigma", "t", {"M"}, false, true, "M", "note"});
  r.wall_clock_seconds = 1.5;
  return r;
}

}  // namespace

TEST_CASE("minimal config gets scenario defaults") {
  const auto cfg = parse_config_text("[scenario]\nid = iterate\n");
  CHECK(cfg.id() == "iterate");
  CHECK(cfg.integer("grid.N") == 512);
  CHECK(cfg.real("grid.L") == 64);
  CHECK(cfg.real("evolution.dt") == 2e-4);
  CHECK(parse_config_text("").id() == "conservation");
}

TEST_CASE("config grammar") {
  const std::string text =
      "# experiment\n"
      "[grid]\n"
      "  N = 256   # fewer nodes\n"
      "\n"
      "[evolution]\n"
      "t_end=1.5\n"
      "initial.amplitude = 0.9\n";
  const auto cfg = parse_config_text(text, "conservation", {"grid.N=1024", "analysis.sigma = 0.1,0.2,0.3"});
  CHECK(cfg.integer("grid.N") == 1024);
  CHECK(cfg.real("evolution.t_end") == 1.5);
  CHECK(cfg.real("initial.amplitude") == 0.9);
  CHECK(cfg.reals("analysis.sigma").size() == 3);
}

TEST_CASE("config errors carry positions") {
  auto parse_error = [](const std::string& text, int line, int column) {
    try {
      parse_config_text(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == column);
      return;
    }
    FAIL("expected ParseError for: " << text);
  };
  parse_error("[grid]\nL = 64\nfoo\n", 3, 1);
  parse_error("[grid]\n  [bogus]\n", 2, 4);
  parse_error("[grid]\nM = 3\n", 2, 1);
  parse_error("N = 3\n", 1, 1);
  parse_error("[grid]\nN =  many\n", 2, 6);
  parse_error("[grid\n", 1, 1);
  CHECK_THROWS_WITH_AS(parse_config_text("[analysis]\nsigma0 = 20\n", "iterate"), doctest::Contains("(A3)"),
                       ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scenario]\nid = radius\n", "iterate"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("", "iterate", {"grid.N"}), ConfigError);
  CHECK_THROWS_AS(parse_config(fs::path("/nonexistent/x.conf")), IoError);
}

TEST_CASE("config text round-trips") {
  for (const auto& id : scenario_ids()) {
    auto cfg = ScenarioConfig::defaults(id);
    cfg.set("analysis.sigma", "0.1,0.2,0.3");
    CHECK(parse_config_text(to_config_text(cfg)) == cfg);
  }
}

TEST_CASE("shipped config files parse to the scenario defaults") {
  const fs::path dir = fs::path(GEVREYFLOW_DATA_DIR).parent_path() / "configs";
  for (const auto& id : scenario_ids()) {
    CHECK(parse_config(dir / (id + ".conf"), id) == ScenarioConfig::defaults(id));
  }
}

TEST_CASE("CSV output") {
  const Series s{"M_sigma", {"t", "value, \"quoted\""}, {{0, 1}, {0.1, 1.0 / 3}, {1e-300, -4.9e-324}}};
  const std::string csv = series_to_csv(s);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.rfind("t,\"value, \"\"quoted\"\"\"\r\n", 0) == 0);
  const auto back = series_from_csv("M_sigma", csv);
  CHECK(back.columns == s.columns);
  CHECK(back.rows == s.rows);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  Series r{"r", {"a", "b"}, {}};
  for (int i = 0; i < 500; ++i) r.add({u(rng), std::ldexp(u(rng), -900)});
  CHECK(series_from_csv("r", series_to_csv(r)).rows == r.rows);

  CHECK_THROWS_AS(series_from_csv("x", "a,b\n1\n"), ParseError);
  CHECK_THROWS_AS(series_from_csv("x", "a\n\"1\n"), ParseError);
  CHECK_THROWS_AS(series_from_csv("x", "a\nabc\n"), ParseError);
  CHECK(file_stem("energy_rate_sigma=0.2") == "energy_rate_sigma_0.2");
}

TEST_CASE("SVG plots") {
  const Series s{"s", {"x", "y", "z"}, {{1, 10, 5}, {10, 100, 6}, {100, 1000, 7}}};
  const auto svg = plot_series(s, {"f", "s", "x", {"y", "z"}, true, true, "Power law", "slope 1"});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("slope 1") != std::string::npos);
  CHECK(svg.find("1e1") != std::string::npos);

  const Series one{"one", {"x", "y"}, {{2, 3}}};
  const auto dot = plot_series(one, {"f", "one", "x", {"y"}, false, false, "", ""});
  CHECK(dot.find("<circle") != std::string::npos);
  CHECK(dot.find("polyline") == std::string::npos);

  CHECK_THROWS_AS(plot_series(Series{"e", {"x", "y"}, {}}, {"f", "e", "x", {"y"}}), ConfigError);
  CHECK_THROWS_AS(plot_series(s, {"f", "s", "x", {"w"}}), ConfigError);
  CHECK_THROWS_AS(plot_series(Series{"n", {"x", "y"}, {{1, -1}}}, {"f", "n", "x", {"y"}, false, true}), ConfigError);
  CHECK(plot_series(s, {"f", "s", "x", {"y"}, false, false, "a<b & c", ""}).find("a&lt;b &amp; c") !=
        std::string::npos);
}

TEST_CASE("report files and registry") {
  TempDir tmp("report");
  auto r = toy_report();
  const auto paths = write_report(r, tmp.path / "run", tmp.path / "runs.jsonl");
  CHECK(fs::exists(tmp.path / "run" / "report.json"));
  CHECK(fs::exists(tmp.path / "run" / "series" / "M_sigma.csv"));
  CHECK(fs::exists(tmp.path / "run" / "plots" / "m.svg"));
  CHECK(paths.back() == tmp.path / "runs.jsonl");
  const auto csv = slurp(tmp.path / "run" / "series" / "M_sigma.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  const auto j = nlohmann::json::parse(slurp(tmp.path / "run" / "report.json"));
  CHECK(j["scenario"] == "conservation");
  CHECK(j["config"]["grid.N"] == "1024");
  CHECK(j["verdicts"][0]["lower"].is_null());
  CHECK(j["wall_clock_seconds"] == 1.5);

  auto again = r;
  again.wall_clock_seconds = 99;
  CHECK(content_hash(again) == content_hash(r));
  again.series[0].rows[0][1] = 2;
  CHECK(content_hash(again) != content_hash(r));

  r.series.clear();
  r.plots.clear();
  write_report(r, tmp.path / "bare", tmp.path / "runs.jsonl");
  CHECK_FALSE(fs::exists(tmp.path / "bare" / "series"));
  std::istringstream lines(slurp(tmp.path / "runs.jsonl"));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto e = nlohmann::json::parse(line);
    CHECK(e["scenario"] == "conservation");
    CHECK(e["hash"].get<std::string>().size() == 16);
    ++count;
  }
  CHECK(count == 2);
}

TEST_CASE("reruns are reproducible and independent of order") {
  auto a = ScenarioConfig::defaults("damping");
  a.set("grid.N", "128");
  a.set("evolution.t_end", "0.2");
  auto b = ScenarioConfig::defaults("inequalities");
  b.set("analysis.samples", "2000");
  b.set("analysis.lattice", "8");
  const auto h1 = content_hash(run_scenario(a));
  const auto hb = content_hash(run_scenario(b));
  const auto h2 = content_hash(run_scenario(a));
  CHECK(h1 == h2);
  CHECK(content_hash(run_scenario(b)) == hb);
}

TEST_CASE("command line dispatch and exit codes") {
  TempDir tmp("cli");
  const std::string out = (tmp.path / "out").string();
  std::string text;

  CHECK(cli({"bogus"}, &text) == 1);
  CHECK(text.find("Usage") != std::string::npos);
  CHECK(cli({}) == 1);
  CHECK(cli({"--help"}) == 0);

  const std::vector<std::string> quick{"--set", "analysis.samples=2000", "--set", "analysis.lattice=8"};
  std::vector<std::string> args{"inequalities", "--out", out, "--seed", "5"};
  args.insert(args.end(), quick.begin(), quick.end());
  CHECK(cli(args, &text) == 0);
  CHECK(text.find("PASS  inequalities/property_sinh") != std::string::npos);
  CHECK(fs::exists(tmp.path / "out" / "inequalities" / "report.json"));
  const auto j = nlohmann::json::parse(slurp(tmp.path / "out" / "inequalities" / "report.json"));
  CHECK(j["config"]["scenario.seed"] == "5");

  CHECK(cli({"sigma-scaling", "--out", out, "--quiet", "--set", "grid.N=128", "--set", "tolerances.slope_hi=1.0"},
            &text) == 2);
  CHECK(text.find("FAIL  sigma-scaling/drift_exponent") != std::string::npos);
  CHECK(text.find("PASS") == std::string::npos);

  CHECK(cli({"iterate", "--out", out, "--set", "analysis.sigma0=20"}, &text) == 1);
  CHECK(text.find("(A3)") != std::string::npos);
  CHECK(cli({"iterate", "--out", out, "--config", (tmp.path / "none.conf").string()}) == 1);
  CHECK(cli({"iterate", "--out", out, "--set", "grid.X=1"}) == 1);

  std::ofstream(tmp.path / "radius.conf") << "[scenario]\nid = iterate\n";
  CHECK(cli({"radius", "--out", out, "--config", (tmp.path / "radius.conf").string()}) == 1);
  CHECK(cli({"all", "--out", out, "--config", (tmp.path / "radius.conf").string()}) == 1);

  SUBCASE("GEVREYFLOW_OUT is the default output directory") {
    const std::string env = (tmp.path / "env").string();
    setenv("GEVREYFLOW_OUT", env.c_str(), 1);
    std::vector<std::string> a{"inequalities", "--quiet"};
    a.insert(a.end(), quick.begin(), quick.end());
    CHECK(cli(a) == 0);
    unsetenv("GEVREYFLOW_OUT");
    CHECK(fs::exists(tmp.path / "env" / "runs.jsonl"));
    CHECK(default_out_dir() == fs::path("gevreyflow-out"));
  }
  SUBCASE("identical reruns log identical hashes") {
    std::vector<std::string> a{"inequalities", "--quiet", "--out", (tmp.path / "rep").string()};
    a.insert(a.end(), quick.begin(), quick.end());
    CHECK(cli(a) == 0);
    CHECK(cli(a) == 0);
    std::istringstream lines(slurp(tmp.path / "rep" / "runs.jsonl"));
    std::string l1, l2;
    std::getline(lines, l1);
    std::getline(lines, l2);
    CHECK(nlohmann::json::parse(l1)["hash"] == nlohmann::json::parse(l2)["hash"]);
  }
  CHECK(scenario_for_subcommand("conserve") == "conservation");
  CHECK(scenario_for_subcommand("all").empty());
}
