#pragma once

#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

/// Travelling wave of u_t + u_xxx + u^2 u_x = 0 (mu = +1):
///   u(x, t) = sqrt(6) k sech(k (x - x0 - k^2 t)).
struct Soliton {
  SpectralField field;
  double speed;
};

/// Soliton sampled on the periodic grid with nearest-image wrapping.
/// Throws ConfigError if k <= 0 or sech(k L / 2) > 1e-12 (tail not negligible).
Soliton soliton(const Grid& grid, double k, double x0);

/// Exact periodic shift f(x - shift), applied as exp(-i xi shift) on the spectrum.
SpectralField translate(const SpectralField& f, double shift);

/// Relative L2 distance ||a - b|| / ||b||.
double relative_l2(const SpectralField& a, const SpectralField& b);

}  // namespace gevreyflow
