#include "gevreyflow/dynamics/exact.hpp"

#include <cmath>
#include <sstream>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

Soliton soliton(const Grid& grid, double k, double x0) {
  if (!(k > 0.0)) throw ConfigError("soliton amplitude parameter k must be > 0");
  const double half = 0.5 * k * grid.length();
  if (1.0 / std::cosh(half) > 1e-12) {
    std::ostringstream msg;
    msg << "soliton tail sech(kL/2) = " << 1.0 / std::cosh(half) << " exceeds 1e-12; enlarge L";
    throw ConfigError(msg.str());
  }
  const double L = grid.length();
  auto field = sample(grid, [&](double x) {
    const double d = std::remainder(x - x0, L);
    return std::sqrt(6.0) * k / std::cosh(k * d);
  });
  return Soliton{std::move(field), k * k};
}

SpectralField translate(const SpectralField& f, double shift) {
  const auto xi = f.grid().frequencies();
  std::vector<cplx> s(f.spectrum().begin(), f.spectrum().end());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] *= std::polar(1.0, -xi[j] * shift);
  s[s.size() / 2] = 0.0;
  return synthesize(s, f.grid());
}

double relative_l2(const SpectralField& a, const SpectralField& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < a.spectrum().size(); ++j) {
    num += std::norm(a.spectrum()[j] - b.spectrum()[j]);
    den += std::norm(b.spectrum()[j]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace gevreyflow
