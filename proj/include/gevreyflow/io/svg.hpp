#pragma once

#include <string>

#include "gevreyflow/harness/report.hpp"

namespace gevreyflow {

/// Self-contained SVG line plot of style.y against style.x from `series`.
/// Log axes drop non-positive points. Throws ConfigError if the series has
/// no rows, a column is missing, or nothing plottable remains.
std::string plot_series(const Series& series, const PlotSpec& style);

}  // namespace gevreyflow
