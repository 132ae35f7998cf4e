#include "gevreyflow/spectral/multiplier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/kernels.hpp"

namespace gevreyflow {

namespace {

constexpr double kLogSpaceThreshold = 30.0;
const double kLogMax = std::log(std::numeric_limits<double>::max());

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

cplx ipow(double xi, int order) {
  // (i xi)^order with i^order taken exactly.
  const double mag = std::pow(xi, order);
  switch (((order % 4) + 4) % 4) {
    case 0: return {mag, 0.0};
    case 1: return {0.0, mag};
    case 2: return {-mag, 0.0};
    default: return {0.0, -mag};
  }
}

bool annihilates_nyquist(const MultiplierSymbol& s) {
  if (const auto* d = std::get_if<Deriv>(&s)) return d->order % 2 != 0;
  return std::holds_alternative<LinearFlow>(s);
}

void validate(const MultiplierSymbol& s) {
  std::visit(overloaded{
                 [](const Deriv& d) {
                   if (d.order < 0) throw ConfigError("Deriv order must be nonnegative");
                 },
                 [](const AbsDeriv& d) {
                   if (d.power < 0) throw ConfigError("AbsDeriv power must be nonnegative");
                 },
                 [](const CoshWeight& w) {
                   if (!(w.sigma >= 0)) throw ConfigError("CoshWeight sigma must be >= 0");
                 },
                 [](const SechWeight& w) {
                   if (!(w.sigma >= 0)) throw ConfigError("SechWeight sigma must be >= 0");
                 },
                 [](const LinearFlow& f) {
                   if (f.order < 3 || f.order % 2 == 0) {
                     throw ConfigError("LinearFlow order must be odd and >= 3");
                   }
                   if (f.sign != 1 && f.sign != -1) throw ConfigError("LinearFlow sign must be +-1");
                   if (!(f.alpha > 0.0 && f.alpha <= 1.0)) {
                     throw ConfigError("LinearFlow alpha must lie in (0, 1]");
                   }
                 },
                 [](const BracketPower&) {},
             },
             s);
}

}  // namespace

double log_cosh(double z) noexcept {
  const double a = std::abs(z);
  if (a < 1.0) {
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);
  }
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

std::vector<cplx> symbol_values(const MultiplierSymbol& symbol, const Grid& grid) {
  validate(symbol);
  const auto xi = grid.frequencies();
  const auto n = xi.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = xi[j];
    out[j] = std::visit(
        overloaded{
            [&](const Deriv& d) { return ipow(x, d.order); },
            [&](const AbsDeriv& d) { return cplx(d.power == 0.0 ? 1.0 : std::pow(std::abs(x), d.power)); },
            [&](const CoshWeight& w) {
              const double z = w.sigma * x;
              if (std::abs(z) > kLogSpaceThreshold) {
                const double lc = log_cosh(z);
                if (lc > kLogMax) {
                  throw OverflowError("cosh weight overflows at sigma*xi = " + std::to_string(z));
                }
                return cplx(std::exp(lc));
              }
              return cplx(std::cosh(z));
            },
            [&](const SechWeight& w) {
              const double z = w.sigma * x;
              if (std::abs(z) > kLogSpaceThreshold) return cplx(std::exp(-log_cosh(z)));
              return cplx(1.0 / std::cosh(z));
            },
            [&](const LinearFlow& f) {
              const double phase = f.sign * f.alpha * std::pow(x, f.order) * f.time;
              return std::polar(1.0, phase);
            },
            [&](const BracketPower& b) { return cplx(std::pow(1.0 + std::abs(x), b.s)); },
        },
        symbol);
  }
  if (annihilates_nyquist(symbol)) out[n / 2] = 0.0;
  return out;
}

void apply_multiplier(std::span<cplx> spectrum, const Grid& grid, const MultiplierSymbol& symbol) {
  validate(symbol);
  if (const auto* w = std::get_if<CoshWeight>(&symbol)) {
    if (w->sigma == 0.0) return;
    const auto xi = grid.frequencies();
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
      const double z = w->sigma * xi[j];
      if (std::abs(z) <= kLogSpaceThreshold) {
        spectrum[j] *= std::cosh(z);
        continue;
      }
      const double mag = std::abs(spectrum[j]);
      if (mag == 0.0) continue;
      const double lg = std::log(mag) + log_cosh(z);
      if (lg > kLogMax) {
        throw OverflowError("cosh-weighted coefficient overflows at sigma*xi = " + std::to_string(z));
      }
      spectrum[j] = std::polar(std::exp(lg), std::arg(spectrum[j]));
    }
    return;
  }
  if (const auto* w = std::get_if<SechWeight>(&symbol); w && w->sigma == 0.0) return;
  const auto values = symbol_values(symbol, grid);
  kernels::scale(spectrum, values);
}

SpectralField apply_multiplier(const SpectralField& field, const MultiplierSymbol& symbol) {
  std::vector<cplx> spec(field.spectrum().begin(), field.spectrum().end());
  apply_multiplier(spec, field.grid(), symbol);
  return synthesize(spec, field.grid());
}

void dealias(std::span<cplx> spectrum) {
  const auto n = spectrum.size();
  const auto keep = n / 4;
  for (std::size_t j = keep + 1; j < n - keep; ++j) spectrum[j] = 0.0;
}

SpectralField dealias(const SpectralField& field) {
  std::vector<cplx> spec(field.spectrum().begin(), field.spectrum().end());
  dealias(spec);
  return synthesize(spec, field.grid());
}

}  // namespace gevreyflow
