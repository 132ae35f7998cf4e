#include "gevreyflow/analytics/radius.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  const double n = static_cast<double>(hi - lo);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ss = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ss += r * r;
  }
  l.rms = std::sqrt(ss / n);
  return l;
}

}  // namespace

RadiusFit radius_estimate(const SpectralField& f, double floor_rel) {
  if (!(floor_rel > 0.0 && floor_rel < 1.0)) throw DomainError("floor_rel must lie in (0, 1)");
  const auto spec = f.spectrum();
  const int n = f.grid().modes();
  double peak = 0.0;
  for (const auto& c : spec) peak = std::max(peak, std::abs(c));

  std::vector<double> xs, ys;
  for (int k = 1; k < n / 2; ++k) {
    const double a = std::abs(spec[static_cast<std::size_t>(k)]);
    if (a > floor_rel * peak && a > 1e-13 * peak) {
      xs.push_back(f.grid().frequency(k));
      ys.push_back(std::log(a));
    }
  }
  if (xs.size() < 12) {
    throw UnderresolvedError("radius fit needs >= 12 modes above the noise floor, found " +
                             std::to_string(xs.size()) + "; increase N or smooth the data");
  }
  const std::size_t used = xs.size() - xs.size() / 10;

  const Line all = least_squares(xs, ys, 0, used);
  RadiusFit fit;
  fit.intercept = all.intercept;
  fit.residual = all.rms;
  fit.xi_lo = xs.front();
  fit.xi_hi = xs[used - 1];
  fit.modes_used = static_cast<int>(used);
  if (all.slope > 0.0) {
    fit.positive_slope = true;
    fit.sigma_hat = 0.0;
  } else {
    fit.sigma_hat = -all.slope;
  }
  const Line first = least_squares(xs, ys, 0, used / 2);
  const Line second = least_squares(xs, ys, used / 2, used);
  const double scale = std::max(std::abs(first.slope), std::abs(second.slope));
  fit.super_exponential = scale > 0.0 && std::abs(second.slope - first.slope) > 0.25 * scale;
  return fit;
}

}  // namespace gevreyflow
