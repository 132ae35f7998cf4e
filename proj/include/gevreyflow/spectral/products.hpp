#pragma once

#include <span>
#include <vector>

#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow::spectral {

using Spectrum = std::vector<cplx>;

/// Samples on the 2x-refined grid (zero-padded synthesis).
std::vector<double> refined_samples(std::span<const cplx> spectrum);

/// Spectrum of refined samples, truncated to the dealiased band |k| <= N/4.
Spectrum project_refined(std::span<const double> refined, int modes);

/// P(a b c) for band-limited inputs, exact on the kept band.
Spectrum triple_product(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c);

/// P(a(x) f) with a sampled on the N grid nodes.
Spectrum multiply_nodes(std::span<const double> a_nodes, std::span<const cplx> f);

/// (i xi)^order f, Nyquist annihilated for odd order.
Spectrum derivative(std::span<const cplx> f, const Grid& grid, int order);

/// Quadrature of a function given on the 2x grid: (L / 2N) sum_j g_j.
double refined_integral(std::span<const double> refined, double length);

}  // namespace gevreyflow::spectral
