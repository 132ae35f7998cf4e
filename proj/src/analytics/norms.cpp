#include "gevreyflow/analytics/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/kernels.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

namespace gevreyflow {

namespace {

// log of each weighted coefficient, then a max-shifted sum.
template <class LogWeight>
double weighted_norm(const SpectralField& f, double sigma, double s, LogWeight log_weight) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
  const auto spec = f.spectrum();
  const auto xi = f.grid().frequencies();
  std::vector<double> logs(spec.size(), -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double mag = std::abs(spec[j]);
    if (mag == 0.0) continue;
    const double ax = std::abs(xi[j]);
    logs[j] = 2.0 * (std::log(mag) + s * std::log1p(ax) + log_weight(sigma * ax));
    top = std::max(top, logs[j]);
  }
  if (!std::isfinite(top)) return 0.0;
  kernels::NeumaierSum acc;
  for (double l : logs) {
    if (std::isfinite(l)) acc.add(std::exp(l - top));
  }
  const double log_norm = 0.5 * (top + std::log(acc.value() * f.grid().length()));
  if (log_norm > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("weighted norm exceeds double range (sigma = " + std::to_string(sigma) + ")");
  }
  return std::exp(log_norm);
}

}  // namespace

double hsigma_norm(const SpectralField& f, double sigma, double s) {
  return weighted_norm(f, sigma, s, [](double z) { return log_cosh(z); });
}

double gsigma_norm(const SpectralField& f, double sigma, double s) {
  return weighted_norm(f, sigma, s, [](double z) { return z; });
}

double functional_M(const SpectralField& v, double sigma) {
  const double n = hsigma_norm(v, sigma, 0.0);
  return n * n;
}

double functional_N(const SpectralField& w1, const SpectralField& w2, double sigma) {
  return functional_M(w1, sigma) + functional_M(w2, sigma);
}

BoundCheck interpolation_check(const SpectralField& v, double sigma1) {
  BoundCheck c;
  c.lhs = hsigma_norm(v, 0.5 * sigma1, 0.0);
  c.rhs = std::sqrt(hsigma_norm(v, 0.0, 0.0) * hsigma_norm(v, sigma1, 0.0));
  c.margin = c.rhs - c.lhs;
  c.holds = c.lhs <= c.rhs * (1.0 + 1e-12);
  return c;
}

}  // namespace gevreyflow
