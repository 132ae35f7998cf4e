#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gevreyflow/dynamics/damping.hpp"
#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

/// A functional value together with its named constituent integrals.
struct FunctionalBreakdown {
  double total = 0.0;
  std::vector<std::pair<std::string, double>> terms;

  /// Throws std::out_of_range for an unknown name.
  double term(const std::string& name) const;
};

/// A_sigma(u) with U = cosh(sigma D) u:
///   I0 = ||U||^2, I1a = ||U_x||^2, I2a = ||U_xx||^2,
///   T4 = -(mu/6) int U^4, T5 = -(5 mu/3) int (U U_x)^2, T6 = (1/18) int U^6.
/// The quadratic terms are spectral sums; the rest use the 2x grid, which is
/// exact for |k| <= N/4 input.
FunctionalBreakdown functional_A(const SpectralField& u, double sigma, int mu);

/// F(W) = (mu/3) d/dx [ P(W^3) - cosh(sigma D) P((sech(sigma D) W)^3) ], P the dealiasing projection.
SpectralField operator_F(const SpectralField& w, double sigma, int mu);

/// G(W) = P(a W) - cosh(sigma D) P(a sech(sigma D) W), a sampled on the grid nodes.
SpectralField operator_G(const SpectralField& w, const DampingProfile& a, double sigma);

/// dA_sigma/dt along the (undamped) mKdV flow, as the seven integrals
///   2 int U F + 2 int U_x F_x - (2 mu/3) int U^3 F + 2 int U_xx F_xx
///   + (1/3) int U^5 F + (10 mu/3) int U U_x^2 F + (10 mu/3) int U^2 U_xx F,
/// with F = F(U).
FunctionalBreakdown energy_rate_A(const SpectralField& u, double sigma, int mu);

struct MassRate {
  double lhs_rate = 0.0;      // dM_sigma/dt
  double damping_term = 0.0;  // -2 int a V^2
  double fg_term = 0.0;       // 2 int (F(V) + G(V)) V
};

/// dM_sigma/dt along the damped mKdVm flow (any odd m; the dispersion does not
/// contribute), V = cosh(sigma D) v.
MassRate mass_rate_M(const SpectralField& v, const DampingProfile& a, double sigma, int mu, int m);

/// ||a||_{A^sigma} = sum_k (k+1)^{1/4} sigma^k / k! ||d^k a||_inf.
/// Sums k <= K exactly and bounds the remainder geometrically through
/// ||d^k a|| <= C R^k k!; K grows until the tail is <= 1e-12 of the head.
/// Returns head + tail bound. Throws DivergenceError if sigma R >= 1,
/// DomainError if K < 8.
double damping_A_norm(const DampingProfile& a, double sigma, int K = 8);

}  // namespace gevreyflow
