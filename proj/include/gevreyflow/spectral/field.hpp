#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gevreyflow/spectral/grid.hpp"

namespace gevreyflow {

using cplx = std::complex<double>;

/// A real periodic field held both as nodal samples and as its
/// Hermitian-symmetric DFT spectrum (FFT order, 1/N normalization).
/// Immutable once built; produce new fields through analyze/synthesize.
class SpectralField {
 public:
  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const cplx> spectrum() const noexcept { return spectrum_; }

  /// Coefficient of wavenumber k, -N/2 <= k < N/2.
  cplx mode(int k) const noexcept { return spectrum_[static_cast<std::size_t>(grid_.index_of(k))]; }
  double max_abs() const noexcept;

  friend SpectralField analyze(std::span<const double> samples, const Grid& grid);
  friend SpectralField synthesize(std::span<const cplx> spectrum, const Grid& grid);

 private:
  SpectralField(Grid grid, std::vector<double> samples, std::vector<cplx> spectrum)
      : grid_(std::move(grid)), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}

  Grid grid_;
  std::vector<double> samples_;
  std::vector<cplx> spectrum_;
};

/// Throws ConfigError if the sample count differs from the grid's.
SpectralField analyze(std::span<const double> samples, const Grid& grid);

/// Throws SymmetryError when max_k |F_{-k} - conj(F_k)| > 10 eps max|F|,
/// ConfigError on a length mismatch.
SpectralField synthesize(std::span<const cplx> spectrum, const Grid& grid);

/// Samples f(x_j) of a callable on the grid nodes.
template <class Fn>
SpectralField sample(const Grid& grid, Fn&& f) {
  std::vector<double> v(static_cast<std::size_t>(grid.modes()));
  for (int j = 0; j < grid.modes(); ++j) v[static_cast<std::size_t>(j)] = f(grid.node(j));
  return analyze(v, grid);
}

SpectralField zero_field(const Grid& grid);

/// L * sum_k |F_k|^2, the quadrature of the squared field.
double spectral_energy(const SpectralField& f);
/// (L/N) * sum_j f_j^2.
double nodal_energy(const SpectralField& f);

}  // namespace gevreyflow
