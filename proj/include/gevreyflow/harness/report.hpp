#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gevreyflow/harness/config.hpp"

namespace gevreyflow {

/// Named table; every row has one value per column.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
  std::vector<double> column(const std::string& col) const;
};

/// Least-squares line y = slope x + intercept (log-log fits pass logs).
struct Fit {
  std::string name;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  int points = 0;
};

/// ConfigError with fewer than 2 points (or `min_points`).
Fit fit_line(const std::string& name, const std::vector<double>& x, const std::vector<double>& y, int min_points = 2);
/// Fit of log y against log x; reports x_lo/x_hi in the original scale.
Fit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y,
               int min_points = 3);

struct Verdict {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double lower = 0.0;  // admissible band [lower, upper]
  double upper = 0.0;
  std::string tolerance_key;  // "tolerances.x" or "tolerances.lo,tolerances.hi"
  std::string detail;
};

/// value <= cfg[key]
Verdict at_most(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& key,
                std::string detail = {});
/// value >= cfg[key]
Verdict at_least(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& key,
                 std::string detail = {});
/// cfg[lo_key] <= value <= cfg[hi_key]
Verdict within(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& lo_key,
               const std::string& hi_key, std::string detail = {});

/// Plot request rendered by the io layer.
struct PlotSpec {
  std::string file;  // stem, no extension
  std::string series;
  std::string x;
  std::vector<std::string> y;
  bool log_x = false;
  bool log_y = false;
  std::string title;
  std::string annotation;
};

struct ExperimentReport {
  std::string scenario;
  std::vector<Series> series;
  std::vector<Fit> fits;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> warnings;
  std::vector<PlotSpec> plots;
  ScenarioConfig config;
  double wall_clock_seconds = 0.0;

  bool passed() const;
  void scalar(const std::string& name, double value) { scalars.emplace_back(name, value); }
  double scalar(const std::string& name) const;
  const Series& find_series(const std::string& name) const;
  const Verdict& find_verdict(const std::string& name) const;
};

}  // namespace gevreyflow
