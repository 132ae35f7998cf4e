#include "gevreyflow/analytics/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Rational s_index(int m) {
  if (m < 5 || m % 2 == 0) throw DomainError("s_index needs odd m >= 5, got " + std::to_string(m));
  const auto a = Rational::make(-(m - 2), 6);
  const auto b = Rational::make(-(14 * m - 55), 60);
  return a < b ? b : a;
}

Rational theta_max(int m) {
  const auto s = s_index(m);
  const auto neg = Rational::make(-s.num, s.den);
  const auto one = Rational::make(1, 1);
  return one < neg ? one : neg;
}

double lifespan_T0(double a_norm, double data_norm_sq, double c0, double d) {
  if (!(c0 > 0.0)) throw DomainError("lifespan constant c0 must be > 0");
  if (!(d > 1.0)) throw DomainError("lifespan exponent d must be > 1");
  if (!(a_norm >= 0.0) || !(data_norm_sq >= 0.0)) throw DomainError("norms must be >= 0");
  return c0 / std::pow(1.0 + a_norm + data_norm_sq, d);
}

double lifespan_T0_coupled(double a_norm1, double a_norm2, double data_norm1, double data_norm2, double c0,
                           double d) {
  return lifespan_T0(std::max(a_norm1, a_norm2), std::max(data_norm1, data_norm2), c0, d);
}

SigmaChoice sigma_choice(double sigma0, double lambda, double T0, double C1, double a_norm, double M0,
                         double theta) {
  if (!(theta > 0.0) || theta > 1.0) {
    throw DomainError("theta must lie in (0, 1]; theta = 0 makes the exponent 1/theta degenerate");
  }
  if (!(sigma0 > 0.0 && lambda > 0.0 && T0 > 0.0 && C1 > 0.0 && a_norm > 0.0 && M0 > 0.0)) {
    throw DomainError("sigma_choice inputs must all be positive");
  }
  const double q = -std::expm1(-2.0 * lambda * T0);
  const double b2 = q / (2.0 * C1 * a_norm);
  const double b3 = std::pow(q / (2.0 * C1 * M0), 1.0 / theta);
  SigmaChoice c{sigma0, 1};
  if (b2 < c.sigma) c = {b2, 2};
  if (b3 < c.sigma) c = {b3, 3};
  return c;
}

}  // namespace gevreyflow
