#include "gevreyflow/inequalities/checks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

namespace {

void check_theta(double theta, const char* name) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(theta));
  }
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0, got " + std::to_string(sigma));
}

InequalityVerdict verdict(double lhs, double rhs, std::vector<double> witness) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs - lhs;
  v.holds = v.margin >= -kInequalityTolerance * std::max(1.0, std::abs(rhs));
  v.witness = std::move(witness);
  return v;
}

// 1 - sech z without cancellation for small z.
double one_minus_sech(double z) {
  z = std::abs(z);
  if (z < 1.0) {
    const double s = std::sinh(0.5 * z);
    return 2.0 * s * s / std::cosh(z);
  }
  return 1.0 - 1.0 / std::cosh(z);
}

}  // namespace

InequalityVerdict check_sinh(double r, double theta) {
  check_theta(theta, "theta");
  return verdict(std::abs(std::tanh(r)), std::pow(std::abs(r), theta), {r, theta});
}

InequalityVerdict check_cosh_minus_one(double sigma, double xi, double theta) {
  check_sigma(sigma);
  check_theta(theta, "theta");
  const double z = sigma * std::abs(xi);
  return verdict(one_minus_sech(z), std::pow(z, 2.0 * theta), {sigma, xi, theta});
}

InequalityVerdict check_equivalence(double sigma, double xi) {
  check_sigma(sigma);
  const double z = sigma * std::abs(xi);
  const double e = std::exp(-2.0 * z);
  const double ratio = 0.5 * (1.0 + e);  // cosh z / e^z
  const double lower_margin = 0.5 * e;
  const double upper_margin = -0.5 * std::expm1(-2.0 * z);
  // Report the tighter side as lhs <= rhs.
  auto v = lower_margin < upper_margin ? verdict(0.5, ratio, {sigma, xi}) : verdict(ratio, 1.0, {sigma, xi});
  v.margin = std::min(lower_margin, upper_margin);
  v.holds = v.margin >= -kInequalityTolerance * std::max(1.0, std::abs(v.rhs));
  return v;
}

InequalityVerdict check_triple_cosh(double sigma, double xi1, double xi2, double xi3, double theta1,
                                    double theta2, double K) {
  check_sigma(sigma);
  check_theta(theta1, "theta1");
  check_theta(theta2, "theta2");
  if (!(K > 0.0)) throw DomainError("constant K must be > 0");
  const double t1 = std::tanh(sigma * xi1);
  const double t2 = std::tanh(sigma * xi2);
  const double t3 = std::tanh(sigma * xi3);
  const double lhs = std::abs(t1 * t2 + t1 * t3 + t2 * t3);
  double m[3] = {std::abs(xi1), std::abs(xi2), std::abs(xi3)};
  std::sort(m, m + 3);
  const double rhs = K * std::pow(sigma, theta1 + theta2) * std::pow(m[1], theta1) * std::pow(m[2], theta2);
  return verdict(lhs, rhs, {sigma, xi1, xi2, xi3, theta1, theta2});
}

}  // namespace gevreyflow
