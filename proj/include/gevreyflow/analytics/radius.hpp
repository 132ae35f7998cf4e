#pragma once

#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

/// Analyticity-strip fit: log|F_k| ~ intercept - sigma_hat xi_k.
struct RadiusFit {
  double sigma_hat = 0.0;
  double intercept = 0.0;
  double xi_lo = 0.0;
  double xi_hi = 0.0;
  double residual = 0.0;  // rms of the linear fit in log space
  int modes_used = 0;
  bool positive_slope = false;    // slope > 0, sigma_hat clamped to 0
  bool super_exponential = false;  // half-window slopes differ by more than 25%
};

/// Fits over k >= 1 with |F_k| > floor_rel max|F| and |F_k| > 1e-13 max|F|,
/// dropping the highest 10% of the usable modes. Throws UnderresolvedError
/// with fewer than 12 usable modes.
RadiusFit radius_estimate(const SpectralField& f, double floor_rel = 1e-8);

}  // namespace gevreyflow
