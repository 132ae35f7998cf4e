#include "gevreyflow/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/fft.hpp"
#include "gevreyflow/spectral/kernels.hpp"

namespace gevreyflow {

double SpectralField::max_abs() const noexcept { return kernels::max_abs(samples_); }

SpectralField analyze(std::span<const double> samples, const Grid& grid) {
  if (samples.size() != static_cast<std::size_t>(grid.modes())) {
    throw ConfigError("analyze: " + std::to_string(samples.size()) + " samples for a grid of " +
                      std::to_string(grid.modes()));
  }
  std::vector<double> s(samples.begin(), samples.end());
  return SpectralField(grid, std::move(s), fft::forward(samples));
}

SpectralField synthesize(std::span<const cplx> spectrum, const Grid& grid) {
  if (spectrum.size() != static_cast<std::size_t>(grid.modes())) {
    throw ConfigError("synthesize: " + std::to_string(spectrum.size()) +
                      " coefficients for a grid of " + std::to_string(grid.modes()));
  }
  double peak = 0.0;
  for (const cplx& c : spectrum) peak = std::max(peak, std::abs(c));
  const double defect = fft::hermitian_defect(spectrum);
  if (defect > 10.0 * std::numeric_limits<double>::epsilon() * peak) {
    throw SymmetryError("synthesize: spectrum is not Hermitian (defect " + std::to_string(defect) +
                        ", peak " + std::to_string(peak) + ")");
  }
  std::vector<cplx> spec(spectrum.begin(), spectrum.end());
  // Store the exactly symmetric version the samples represent.
  const auto n = spec.size();
  spec[0] = cplx(spec[0].real(), 0.0);
  spec[n / 2] = cplx(spec[n / 2].real(), 0.0);
  for (std::size_t j = n / 2 + 1; j < n; ++j) spec[j] = std::conj(spec[n - j]);
  auto samples = fft::inverse(spec);
  return SpectralField(grid, std::move(samples), std::move(spec));
}

SpectralField zero_field(const Grid& grid) {
  std::vector<double> z(static_cast<std::size_t>(grid.modes()), 0.0);
  return analyze(z, grid);
}

double spectral_energy(const SpectralField& f) {
  const std::vector<double> ones(f.spectrum().size(), 1.0);
  return f.grid().length() * kernels::weighted_energy(f.spectrum(), ones);
}

double nodal_energy(const SpectralField& f) {
  kernels::NeumaierSum acc;
  for (double v : f.samples()) acc.add(v * v);
  return f.grid().spacing() * acc.value();
}

}  // namespace gevreyflow
