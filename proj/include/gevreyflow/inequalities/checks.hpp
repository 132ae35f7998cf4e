#pragma once

#include <vector>

namespace gevreyflow {

/// Outcome of one scalar inequality lhs <= rhs.
/// holds <=> margin >= -1e-12 max(1, |rhs|).
struct InequalityVerdict {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  std::vector<double> witness;
};

inline constexpr double kInequalityTolerance = 1e-12;

// Each check is evaluated in a form divided by the largest cosh factor, which
// keeps every quantity in [0, 1]-ish range and never overflows. The reported
// lhs/rhs/margin are in those scaled units.

/// |sinh r| <= |r|^theta cosh r, evaluated as |tanh r| <= |r|^theta.
/// DomainError for theta outside [0, 1].
InequalityVerdict check_sinh(double r, double theta);

/// cosh(sigma xi) - 1 <= (sigma |xi|)^{2 theta} cosh(sigma xi), evaluated as
/// 1 - sech(sigma xi) <= (sigma |xi|)^{2 theta}.
InequalityVerdict check_cosh_minus_one(double sigma, double xi, double theta);

/// (1/2) e^{sigma|xi|} <= cosh(sigma xi) <= e^{sigma|xi|}, divided by e^{sigma|xi|}.
/// The margin is the smaller of the two sides' margins.
InequalityVerdict check_equivalence(double sigma, double xi);

/// |1 - cosh(sigma xi) prod_i sech(sigma xi_i)| <= K sigma^{t1+t2} xi_med^{t1} xi_max^{t2},
/// xi = xi1 + xi2 + xi3, xi_med/xi_max the median/max of |xi_i|. The left side
/// equals |t1 t2 + t1 t3 + t2 t3| with t_i = tanh(sigma xi_i), which is how it
/// is computed.
InequalityVerdict check_triple_cosh(double sigma, double xi1, double xi2, double xi3, double theta1,
                                    double theta2, double K);

}  // namespace gevreyflow
