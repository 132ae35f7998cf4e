#pragma once

#include <string>
#include <vector>

#include "gevreyflow/spectral/grid.hpp"

namespace gevreyflow {

enum class DampingForm { Constant, RaisedCosine };

std::string to_string(DampingForm form);
DampingForm damping_form_from_string(const std::string& name);

/// Analytic damping coefficient a(x) together with certified constants:
///   a(x) >= lambda                      (floor)
///   ||d^k a||_inf <= C R^k k!           (growth_constant C, growth_rate R)
///
/// Constant(lambda):            a = lambda,                      C = lambda,     R = 0.
/// RaisedCosine(lambda, eps, L): a = lambda + eps(1 + cos(2 pi x / L)), C = lambda + 2 eps, R = 2 pi / L.
class DampingProfile {
 public:
  static DampingProfile constant(double lambda);
  static DampingProfile raised_cosine(double lambda, double epsilon, double length);

  DampingForm form() const noexcept { return form_; }
  double lambda() const noexcept { return lambda_; }
  double epsilon() const noexcept { return epsilon_; }
  double period() const noexcept { return length_; }
  double growth_constant() const noexcept { return growth_constant_; }
  double growth_rate() const noexcept { return growth_rate_; }
  bool is_constant() const noexcept { return form_ == DampingForm::Constant || epsilon_ == 0.0; }

  double operator()(double x) const noexcept;
  /// Exact ||d^k a||_inf.
  double sup_derivative(int k) const noexcept;
  double sup() const noexcept { return sup_derivative(0); }
  std::vector<double> sample(const Grid& grid) const;

  friend bool operator==(const DampingProfile&, const DampingProfile&) = default;

 private:
  DampingProfile(DampingForm form, double lambda, double epsilon, double length);

  DampingForm form_;
  double lambda_;
  double epsilon_;
  double length_;
  double growth_constant_;
  double growth_rate_;
};

/// Builds a profile on the grid's period and certifies it:
///   (A1) lambda > 0, epsilon >= 0;
///   (A2) ||d^k a||_inf <= C R^k k! for k <= 8, checked by spectral differentiation;
///   (A3) R < 1/sigma0.
/// Throws ConfigError naming the violated condition.
DampingProfile make_damping(DampingForm form, double lambda, double epsilon, const Grid& grid,
                            double sigma0);

/// Largest ratio ||d^k a||_inf / (C R^k k!) over k <= max_order, measured by
/// spectral differentiation of the sampled profile (0/0 counts as 0).
double derivative_bound_ratio(const DampingProfile& a, const Grid& grid, int max_order = 8);

}  // namespace gevreyflow
