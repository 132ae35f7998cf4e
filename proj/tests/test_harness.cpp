#include <cmath>

#include "doctest.h"
#include "gevreyflow/error.hpp"
#include "gevreyflow/harness/config.hpp"
#include "gevreyflow/harness/report.hpp"
#include "gevreyflow/harness/scenarios.hpp"

using namespace gevreyflow;

namespace {

ScenarioConfig small(const std::string& id) {
  auto cfg = ScenarioConfig::defaults(id);
  cfg.set("grid.N", "128");
  cfg.set("output.plots", "false");
  return cfg;
}

}  // namespace

TEST_CASE("config defaults, typing and unknown keys") {
  const auto cfg = ScenarioConfig::defaults("iterate");
  CHECK(cfg.integer("grid.N") == 512);
  CHECK(cfg.real("grid.L") == 64.0);
  CHECK(cfg.real("evolution.dt") == 2e-4);
  CHECK(cfg.text("evolution.equation") == "mkdvm");
  CHECK(cfg.reals("analysis.sigma") == std::vector<double>{0.05, 0.1, 0.2, 0.4});
  CHECK(cfg.boolean("output.plots"));

  auto c = cfg;
  c.set("grid.N", " 1024 ");
  CHECK(c.integer("grid.N") == 1024);
  CHECK_THROWS_AS(c.set("grid.M", "3"), ConfigError);
  CHECK_THROWS_AS(c.set("grid.N", "12.5"), ConfigError);
  CHECK_THROWS_AS(c.set("evolution.dt", "fast"), ConfigError);
  CHECK_THROWS_AS(c.set("output.plots", "yes"), ConfigError);
  CHECK_THROWS_AS(c.set("analysis.sigma", "0.1,x"), ConfigError);
  CHECK_THROWS_AS(ScenarioConfig::defaults("nope"), ConfigError);
  CHECK(scenario_ids().size() == 7);
  for (const auto& id : scenario_ids()) CHECK_NOTHROW(validate(ScenarioConfig::defaults(id)));
}

TEST_CASE("validation names the violated condition") {
  auto c = ScenarioConfig::defaults("iterate");
  c.set("analysis.sigma0", "20");
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("(A3)"), ConfigError);
  c = ScenarioConfig::defaults("iterate");
  c.set("damping.lambda", "0");
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("(A1)"), ConfigError);
  c = ScenarioConfig::defaults("sigma-scaling");
  c.set("analysis.sigma", "0.4,0.1");
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ScenarioConfig::defaults("conservation");
  c.set("grid.N", "100");
  CHECK_NOTHROW(c.integer("grid.N"));
  c.set("grid.N", "101");
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ScenarioConfig::defaults("coupled");
  c.set("evolution.alpha", "1.5");
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = ScenarioConfig::defaults("conservation");
  c.set("tolerances.conservation", "-1");
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("log-log fits and verdict helpers") {
  const std::vector<double> x{1, 2, 4, 8}, y{3, 12, 48, 192};
  const auto f = fit_loglog("p", x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.points == 4);
  CHECK_THROWS_AS(fit_loglog("p", {1, 2}, {1, 2}), ConfigError);
  CHECK_THROWS_AS(fit_loglog("p", {1, 2, 3}, {1, -2, 3}), ConfigError);

  const auto cfg = ScenarioConfig::defaults("conservation");
  CHECK(at_most("a", 1e-7, cfg, "tolerances.conservation").passed);
  CHECK_FALSE(at_most("a", 1e-5, cfg, "tolerances.conservation").passed);
  CHECK(at_least("b", 0.99, cfg, "tolerances.r2_min").passed);
  const auto w = within("c", 2.5, cfg, "tolerances.slope_lo", "tolerances.slope_hi");
  CHECK_FALSE(w.passed);
  CHECK(w.tolerance_key == "tolerances.slope_lo,tolerances.slope_hi");
  CHECK_FALSE(at_most("nan", NAN, cfg, "tolerances.conservation").passed);
}

TEST_CASE("initial data profiles") {
  auto cfg = small("coupled");
  const Grid g = make_grid(cfg);
  cfg.set("initial.second", "2");
  const auto w = initial_data(cfg, g);
  REQUIRE(w.size() == 2);
  CHECK(w[1].max_abs() == doctest::Approx(2 * w[0].max_abs()));
  for (const char* p : {"soliton", "sech", "gaussian", "packet", "zero"}) {
    auto c = small("conservation");
    c.set("initial.profile", p);
    c.set("initial.frequency", "2");
    CHECK(initial_data(c, g).size() == 1);
  }
  auto c = small("conservation");
  c.set("initial.profile", "square");
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("conservation of zero data is exact") {
  auto cfg = small("conservation");
  cfg.set("initial.profile", "zero");
  cfg.set("evolution.t_end", "0.1");
  cfg.set("evolution.record_every", "100");
  const auto r = run_scenario(cfg);
  for (const char* v : {"drift_I0", "drift_I1", "drift_I2"}) CHECK(r.find_verdict(v).value == 0.0);
  CHECK(r.passed());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("sigma-scaling preconditions") {
  auto cfg = small("sigma-scaling");
  cfg.set("analysis.sigma", "0.2");
  CHECK_THROWS_AS(run_scenario(cfg), ConfigError);

  cfg = small("sigma-scaling");
  cfg.set("analysis.sigma", "0,0.05,0.1,0.2,0.4");
  const auto r = run_scenario(cfg);
  CHECK(r.find_series("drift_vs_sigma").rows.size() == 5);
  CHECK(r.fits.front().points == 4);
  bool excluded = false;
  for (const auto& w : r.warnings) excluded = excluded || w.find("D(sigma=0)") != std::string::npos;
  CHECK(excluded);
}

TEST_CASE("iterate with k_max = 0 reports only T0 and sigma") {
  auto cfg = small("iterate");
  cfg.set("analysis.k_max", "0");
  const auto r = run_scenario(cfg);
  CHECK(r.verdicts.empty());
  CHECK(r.scalar("T0") > 0);
  CHECK(r.scalar("sigma") > 0);
  CHECK(r.scalar("sigma") <= cfg.real("analysis.sigma0"));
}

TEST_CASE("iterate with fixed C1 and constant damping") {
  auto cfg = small("iterate");
  cfg.set("analysis.k_max", "0");
  cfg.set("analysis.c1_policy", "fixed");
  cfg.set("analysis.c1", "1000");
  cfg.set("damping.form", "constant");
  const auto r = run_scenario(cfg);
  CHECK(r.scalar("a_norm") == doctest::Approx(1.0));
  CHECK(r.scalar("C1") == 1000.0);
  CHECK(r.scalar("sigma_branch") == 3);
}

TEST_CASE("coupled envelope uses the smaller damping floor") {
  auto cfg = small("coupled");
  cfg.set("analysis.k_max", "0");
  cfg.set("damping2.lambda", "2");
  cfg.set("analysis.degenerate_t_end", "0.05");
  const auto r = run_scenario(cfg);
  CHECK(r.scalar("lambda0") == 1.0);
  CHECK(r.find_verdict("degenerate_reduction").passed);
  CHECK(r.find_verdict("degenerate_N_equals_M").passed);
}

TEST_CASE("radius tracking rejects unresolved data") {
  auto cfg = small("radius");
  cfg.set("initial.profile", "zero");
  cfg.set("evolution.t_end", "0.01");
  CHECK_THROWS_AS(run_scenario(cfg), UnderresolvedError);
}

TEST_CASE("damping scenario on a coarse grid") {
  auto cfg = small("damping");
  cfg.set("evolution.t_end", "0.5");
  const auto r = run_scenario(cfg);
  CHECK(r.passed());
  CHECK(r.find_verdict("constant_damping_equality").value < 1e-10);
  CHECK(r.config == cfg);
  CHECK(r.wall_clock_seconds > 0);
}
