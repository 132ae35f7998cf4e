#pragma once

#include <span>
#include <variant>
#include <vector>

#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

// Fourier multiplier symbols. Symbols that are odd in xi (odd derivatives,
// the linear flow) annihilate the Nyquist mode, since no real field can
// carry an imaginary Nyquist coefficient.

/// (i xi)^order
struct Deriv {
  int order = 1;
};
/// |xi|^power
struct AbsDeriv {
  double power = 1.0;
};
/// cosh(sigma xi)
struct CoshWeight {
  double sigma = 0.0;
};
/// sech(sigma xi)
struct SechWeight {
  double sigma = 0.0;
};
/// exp(i sign alpha xi^order t): the free dispersive flow over time t.
struct LinearFlow {
  int order = 3;
  int sign = 1;
  double alpha = 1.0;
  double time = 0.0;
};
/// (1 + |xi|)^s
struct BracketPower {
  double s = 0.0;
};

using MultiplierSymbol = std::variant<Deriv, AbsDeriv, CoshWeight, SechWeight, LinearFlow, BracketPower>;

/// log cosh(z), accurate for all finite z.
double log_cosh(double z) noexcept;

/// Symbol evaluated at every FFT index of the grid. Throws OverflowError for
/// a CoshWeight whose values leave double range; use apply_multiplier, which
/// switches to log space, for those.
std::vector<cplx> symbol_values(const MultiplierSymbol& symbol, const Grid& grid);

/// Multiplies the spectrum pointwise by the symbol. CoshWeight coefficients
/// with sigma|xi| > 30 are formed as exp(log|F_k| + log cosh(sigma xi)); an
/// OverflowError is raised only if the resulting coefficient itself overflows.
SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& symbol);

/// In-place variant on a raw spectrum (FFT order, grid-sized).
void apply_multiplier(std::span<cplx> spectrum, const Grid& grid, const MultiplierSymbol& symbol);

/// Zeroes every mode with |k| > N/4 (exact removal of cubic aliasing).
SpectralField dealias(const SpectralField& field);
void dealias(std::span<cplx> spectrum);

}  // namespace gevreyflow
