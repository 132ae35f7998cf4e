#include "gevreyflow/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

Grid Grid::make(double length, int modes) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite, got " + std::to_string(length));
  }
  if (modes < 16 || modes % 2 != 0) {
    throw ConfigError("grid mode count must be even and >= 16, got " + std::to_string(modes));
  }
  return Grid(length, modes);
}

Grid::Grid(double length, int modes) : length_(length), modes_(modes) {
  auto xi = std::make_shared<std::vector<double>>(static_cast<std::size_t>(modes));
  const double base = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < modes; ++j) {
    (*xi)[static_cast<std::size_t>(j)] = base * wavenumber(j);
  }
  frequencies_ = std::move(xi);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(modes_));
  for (int j = 0; j < modes_; ++j) x[static_cast<std::size_t>(j)] = node(j);
  return x;
}

double Grid::max_frequency() const noexcept { return std::numbers::pi * modes_ / length_; }

Grid Grid::refined(int factor) const { return Grid(length_, modes_ * factor); }

}  // namespace gevreyflow
