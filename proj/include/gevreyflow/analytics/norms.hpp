#pragma once

#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

/// (L sum_k (1+|xi_k|)^{2s} cosh^2(sigma xi_k) |F_k|^2)^{1/2}, summed in log space.
double hsigma_norm(const SpectralField& f, double sigma, double s);
/// Same with the weight e^{sigma |xi_k|} in place of cosh(sigma xi_k).
double gsigma_norm(const SpectralField& f, double sigma, double s);

/// M_sigma = ||cosh(sigma D) v||^2_{L^2}
double functional_M(const SpectralField& v, double sigma);
/// N_sigma = M_sigma(w1) + M_sigma(w2)
double functional_N(const SpectralField& w1, const SpectralField& w2, double sigma);

struct BoundCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

/// ||v||_{H^{sigma1/2,0}} <= (||v||_{L^2} ||v||_{H^{sigma1,0}})^{1/2} (1 + 1e-12).
BoundCheck interpolation_check(const SpectralField& v, double sigma1);

}  // namespace gevreyflow
