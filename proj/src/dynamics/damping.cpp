#include "gevreyflow/dynamics/damping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/field.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

namespace gevreyflow {

std::string to_string(DampingForm form) {
  return form == DampingForm::Constant ? "constant" : "raised-cosine";
}

DampingForm damping_form_from_string(const std::string& name) {
  if (name == "constant") return DampingForm::Constant;
  if (name == "raised-cosine") return DampingForm::RaisedCosine;
  throw ConfigError("unknown damping form '" + name + "' (expected constant or raised-cosine)");
}

DampingProfile::DampingProfile(DampingForm form, double lambda, double epsilon, double length)
    : form_(form), lambda_(lambda), epsilon_(epsilon), length_(length) {
  if (form == DampingForm::Constant) {
    growth_constant_ = lambda;
    growth_rate_ = 0.0;
  } else {
    growth_constant_ = lambda + 2.0 * epsilon;
    growth_rate_ = 2.0 * std::numbers::pi / length;
  }
}

DampingProfile DampingProfile::constant(double lambda) {
  if (!(lambda > 0.0)) {
    throw ConfigError("(A1): damping floor lambda must be > 0, got " + std::to_string(lambda));
  }
  return DampingProfile(DampingForm::Constant, lambda, 0.0, 0.0);
}

DampingProfile DampingProfile::raised_cosine(double lambda, double epsilon, double length) {
  if (!(lambda > 0.0)) {
    throw ConfigError("(A1): damping floor lambda must be > 0, got " + std::to_string(lambda));
  }
  if (!(epsilon >= 0.0)) throw ConfigError("raised-cosine epsilon must be >= 0");
  if (!(length > 0.0)) throw ConfigError("raised-cosine period must be > 0");
  return DampingProfile(DampingForm::RaisedCosine, lambda, epsilon, length);
}

double DampingProfile::operator()(double x) const noexcept {
  if (form_ == DampingForm::Constant) return lambda_;
  return lambda_ + epsilon_ * (1.0 + std::cos(2.0 * std::numbers::pi * x / length_));
}

double DampingProfile::sup_derivative(int k) const noexcept {
  if (k == 0) return form_ == DampingForm::Constant ? lambda_ : lambda_ + 2.0 * epsilon_;
  if (form_ == DampingForm::Constant) return 0.0;
  return epsilon_ * std::pow(growth_rate_, k);
}

std::vector<double> DampingProfile::sample(const Grid& grid) const {
  std::vector<double> v(static_cast<std::size_t>(grid.modes()));
  for (int j = 0; j < grid.modes(); ++j) v[static_cast<std::size_t>(j)] = (*this)(grid.node(j));
  return v;
}

double derivative_bound_ratio(const DampingProfile& a, const Grid& grid, int max_order) {
  const auto base = dealias(analyze(a.sample(grid), grid));
  double worst = 0.0;
  double factorial = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) factorial *= k;
    const auto dk = k == 0 ? base : apply_multiplier(base, Deriv{k});
    const double sup = dk.max_abs();
    const double bound = a.growth_constant() * std::pow(a.growth_rate(), k) * factorial;
    if (bound > 0.0) {
      worst = std::max(worst, sup / bound);
    } else if (sup > 1e-12 * std::max(1.0, a.sup())) {
      return HUGE_VAL;
    }
  }
  return worst;
}

DampingProfile make_damping(DampingForm form, double lambda, double epsilon, const Grid& grid,
                            double sigma0) {
  auto profile = form == DampingForm::Constant
                     ? DampingProfile::constant(lambda)
                     : DampingProfile::raised_cosine(lambda, epsilon, grid.length());
  if (const double ratio = derivative_bound_ratio(profile, grid); !(ratio <= 1.0 + 1e-10)) {
    std::ostringstream msg;
    msg << "(A2): ||d^k a|| exceeds C R^k k! (worst ratio " << ratio << ")";
    throw ConfigError(msg.str());
  }
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be > 0");
  const double r = profile.growth_rate();
  if (!(r * sigma0 < 1.0)) {
    std::ostringstream msg;
    msg << "(A3): R >= 1/sigma0 (R = " << r << ", sigma0 = " << sigma0 << ", 1/sigma0 = " << 1.0 / sigma0
        << ")";
    throw ConfigError(msg.str());
  }
  return profile;
}

}  // namespace gevreyflow
