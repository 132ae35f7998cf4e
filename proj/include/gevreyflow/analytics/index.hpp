#pragma once

#include <cstdint>
#include <string>

namespace gevreyflow {

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) noexcept { return a.num * b.den < b.num * a.den; }
};

/// s_m = max{-(m-2)/6, -(14m-55)/60} for odd m >= 5; DomainError otherwise.
Rational s_index(int m);
/// min{1, -s_m}
Rational theta_max(int m);

/// T0 = c0 / (1 + a_norm + data_norm_sq)^d. DomainError unless c0 > 0, d > 1.
double lifespan_T0(double a_norm, double data_norm_sq, double c0 = 1.0, double d = 2.0);

/// Coupled system: T0 = c0 / (1 + max_i ||a_i||_A + max_i ||w_i0||_{H^{sigma0,0}})^d.
double lifespan_T0_coupled(double a_norm1, double a_norm2, double data_norm1, double data_norm2,
                           double c0 = 1.0, double d = 2.0);

struct SigmaChoice {
  double sigma = 0.0;
  int branch = 0;  // 1: sigma0, 2: damping term, 3: data term
};

/// min{ sigma0, q / (2 C1 a_norm), (q / (2 C1 M0))^{1/theta} } with q = 1 - e^{-2 lambda T0}.
/// DomainError for theta outside (0, 1] (theta = 0 is degenerate) or non-positive inputs.
SigmaChoice sigma_choice(double sigma0, double lambda, double T0, double C1, double a_norm, double M0,
                         double theta);

}  // namespace gevreyflow
