#include "gevreyflow/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

std::vector<double> Series::column(const std::string& col) const {
  const auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw std::out_of_range("series " + name + " has no column " + col);
  const auto j = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

Fit fit_line(const std::string& name, const std::vector<double>& x, const std::vector<double>& y, int min_points) {
  if (x.size() != y.size()) throw ConfigError("fit " + name + ": x and y differ in length");
  const auto n = static_cast<int>(x.size());
  if (n < std::max(2, min_points)) {
    throw ConfigError("fit " + name + " needs at least " + std::to_string(std::max(2, min_points)) +
                      " points, got " + std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += x[static_cast<std::size_t>(i)];
    my += y[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = x[static_cast<std::size_t>(i)] - mx;
    const double dy = y[static_cast<std::size_t>(i)] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("fit " + name + ": all x values coincide");
  Fit f;
  f.name = name;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  f.x_lo = *std::min_element(x.begin(), x.end());
  f.x_hi = *std::max_element(x.begin(), x.end());
  f.points = n;
  return f;
}

Fit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y, int min_points) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ConfigError("log-log fit " + name + " needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  Fit f = fit_line(name, lx, ly, min_points);
  f.x_lo = std::exp(f.x_lo);
  f.x_hi = std::exp(f.x_hi);
  return f;
}

Verdict at_most(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& key,
                std::string detail) {
  const double hi = cfg.real(key);
  return Verdict{name, value <= hi, value, -HUGE_VAL, hi, key, std::move(detail)};
}

Verdict at_least(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& key,
                 std::string detail) {
  const double lo = cfg.real(key);
  return Verdict{name, value >= lo, value, lo, HUGE_VAL, key, std::move(detail)};
}

Verdict within(const std::string& name, double value, const ScenarioConfig& cfg, const std::string& lo_key,
               const std::string& hi_key, std::string detail) {
  const double lo = cfg.real(lo_key);
  const double hi = cfg.real(hi_key);
  return Verdict{name, value >= lo && value <= hi, value, lo, hi, lo_key + "," + hi_key, std::move(detail)};
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

double ExperimentReport::scalar(const std::string& name) const {
  for (const auto& [n, v] : scalars) {
    if (n == name) return v;
  }
  throw std::out_of_range("report has no scalar " + name);
}

const Series& ExperimentReport::find_series(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("report has no series " + name);
}

const Verdict& ExperimentReport::find_verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw std::out_of_range("report has no verdict " + name);
}

}  // namespace gevreyflow
