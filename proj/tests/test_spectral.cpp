#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/fft.hpp"
#include "gevreyflow/spectral/field.hpp"
#include "gevreyflow/spectral/grid.hpp"
#include "gevreyflow/spectral/kernels.hpp"
#include "gevreyflow/spectral/multiplier.hpp"
#include "gevreyflow/spectral/products.hpp"

using namespace gevreyflow;
using std::numbers::pi;

namespace {

std::vector<cplx> direct_dft(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<cplx> out(f.size());
  for (int k = 0; k < n; ++k) {
    cplx s = 0;
    for (int j = 0; j < n; ++j) s += f[j] * std::polar(1.0, -2.0 * pi * k * j / n);
    out[k] = s / static_cast<double>(n);
  }
  return out;
}

// Random real field with modes |k| <= band.
SpectralField band_limited(const Grid& g, int band, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> spec(g.modes(), 0.0);
  spec[0] = nd(rng);
  for (int k = 1; k <= band; ++k) {
    const cplx c(nd(rng), nd(rng));
    spec[g.index_of(k)] = c;
    spec[g.index_of(-k)] = std::conj(c);
  }
  return synthesize(spec, g);
}

}  // namespace

TEST_CASE("grid preconditions and frequencies") {
  CHECK_THROWS_AS(Grid::make(0.0, 64), ConfigError);
  CHECK_THROWS_AS(Grid::make(10.0, 63), ConfigError);
  CHECK_THROWS_AS(Grid::make(10.0, 8), ConfigError);
  const Grid g = Grid::make(2 * pi, 16);
  CHECK(g.wavenumber(3) == 3);
  CHECK(g.wavenumber(8) == -8);
  CHECK(g.wavenumber(15) == -1);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.frequency(5) == doctest::Approx(5.0));
  CHECK(g.retained_wavenumber() == 4);
}

TEST_CASE("forward transform matches direct DFT at N = 32") {
  const Grid g = Grid::make(7.0, 32);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> f(32);
  for (double& v : f) v = u(rng);
  const auto field = analyze(f, g);
  const auto oracle = direct_dft(f);
  for (int k = 0; k < 32; ++k) CHECK(std::abs(field.spectrum()[k] - oracle[k]) < 1e-14);
}

TEST_CASE("analyze and synthesize are inverse") {
  const Grid g = Grid::make(10.0, 64);
  const auto f = sample(g, [](double x) { return std::exp(std::sin(x)) - 0.3 * std::cos(3 * x); });
  const auto back = synthesize(f.spectrum(), g);
  for (int j = 0; j < 64; ++j) CHECK(std::abs(back.samples()[j] - f.samples()[j]) < 1e-13);
}

TEST_CASE("constant and single mode spectra") {
  const Grid g = Grid::make(2 * pi, 16);
  const auto one = sample(g, [](double) { return 1.0; });
  CHECK(one.mode(0).real() == doctest::Approx(1.0));
  const auto c = sample(g, [](double x) { return std::cos(2 * x); });
  CHECK(std::abs(c.mode(2) - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(c.mode(-2) - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(c.mode(1)) < 1e-15);
}

TEST_CASE("synthesize rejects non-Hermitian spectra and bad lengths") {
  const Grid g = Grid::make(1.0, 16);
  std::vector<cplx> spec(16, 0.0);
  spec[1] = cplx(0, 1);
  CHECK_THROWS_AS(synthesize(spec, g), SymmetryError);
  CHECK_THROWS_AS(synthesize(std::vector<cplx>(8), g), ConfigError);
  CHECK_THROWS_AS(analyze(std::vector<double>(10), g), ConfigError);
}

TEST_CASE("energies agree (Parseval)") {
  const Grid g = Grid::make(12.0, 128);
  const auto f = band_limited(g, 30, 11);
  CHECK(spectral_energy(f) == doctest::Approx(nodal_energy(f)).epsilon(1e-13));
}

TEST_CASE("dealias keeps |k| <= N/4 only") {
  const Grid g = Grid::make(2 * pi, 32);
  const auto low = band_limited(g, 8, 1);
  const auto same = dealias(low);
  for (int j = 0; j < 32; ++j) CHECK(same.spectrum()[j] == low.spectrum()[j]);
  const auto full = band_limited(g, 15, 2);
  const auto cut = dealias(full);
  for (int k = -15; k <= 15; ++k) {
    if (std::abs(k) > 8) {
      CHECK(cut.mode(k) == cplx(0, 0));
    } else {
      CHECK(cut.mode(k) == full.mode(k));
    }
  }
}

TEST_CASE("dealiased cube equals the 3x padded oracle at N = 64") {
  const Grid g = Grid::make(5.0, 64);
  const auto u = band_limited(g, 16, 5);
  const auto cube = spectral::triple_product(u.spectrum(), u.spectrum(), u.spectrum());
  // Oracle: evaluate on 3N nodes by direct summation, cube, direct DFT.
  const int n3 = 192;
  std::vector<double> fine(n3);
  for (int j = 0; j < n3; ++j) {
    cplx s = 0;
    for (int k = -16; k <= 16; ++k) s += u.mode(k) * std::polar(1.0, 2.0 * pi * k * j / n3);
    fine[j] = std::pow(s.real(), 3);
  }
  for (int k = -16; k <= 16; ++k) {
    cplx c = 0;
    for (int j = 0; j < n3; ++j) c += fine[j] * std::polar(1.0, -2.0 * pi * k * j / n3);
    c /= n3;
    CHECK(std::abs(cube[g.index_of(k)] - c) < 1e-12);
  }
  for (int k = 17; k < 32; ++k) CHECK(std::abs(cube[g.index_of(k)]) == 0.0);
}

TEST_CASE("multipliers") {
  const Grid g = Grid::make(2 * pi, 32);
  const auto s = sample(g, [](double x) { return std::sin(3 * x); });

  SUBCASE("first derivative of sin is 3 cos") {
    const auto d = apply_multiplier(s, Deriv{1});
    for (int j = 0; j < 32; ++j) CHECK(d.samples()[j] == doctest::Approx(3 * std::cos(3 * g.node(j))));
  }
  SUBCASE("odd symbols annihilate the Nyquist mode") {
    const auto nyq = sample(g, [](double x) { return std::cos(16 * x); });
    const auto d = apply_multiplier(nyq, Deriv{1});
    CHECK(d.max_abs() == 0.0);
    const auto d2 = apply_multiplier(nyq, Deriv{2});
    CHECK(d2.max_abs() == doctest::Approx(256.0));
  }
  // Exact single-mode spectra: round-off in other modes would be amplified by cosh.
  auto cos1 = [&](double amp) {
    std::vector<cplx> spec(32, 0.0);
    spec[1] = spec[31] = 0.5 * amp;
    return synthesize(spec, g);
  };
  SUBCASE("cosh weight reproduces cosh(2)") {
    const auto c = cos1(1.0);
    const auto w = apply_multiplier(c, CoshWeight{2.0});
    CHECK(w.samples()[0] == doctest::Approx(3.7621956911).epsilon(1e-10));
    const auto back = apply_multiplier(w, SechWeight{2.0});
    CHECK(back.samples()[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("log_cosh is accurate for large and small arguments") {
    CHECK(log_cosh(2.0) == doctest::Approx(std::log(3.7621956911)).epsilon(1e-10));
    CHECK(log_cosh(1000.0) == doctest::Approx(1000.0 - std::log(2.0)));
    CHECK(std::abs(log_cosh(1e-8) / 5e-17 - 1.0) < 1e-6);
    CHECK(log_cosh(-3.0) == log_cosh(3.0));
  }
  SUBCASE("huge cosh weights overflow in symbol_values but not in apply_multiplier") {
    const auto tiny = cos1(1e-300);
    CHECK_THROWS_AS(symbol_values(CoshWeight{800.0}, g), OverflowError);
    const auto w = apply_multiplier(tiny, CoshWeight{700.0});
    CHECK(std::isfinite(w.max_abs()));
    const auto big = cos1(1.0);
    CHECK_THROWS_AS(apply_multiplier(big, CoshWeight{800.0}), OverflowError);
  }
  SUBCASE("linear flow advances the Airy equation exactly") {
    // u_t + u_xxx = 0: e^{ikx} -> e^{i(kx + k^3 t)}
    const auto c = sample(g, [](double x) { return std::cos(2 * x); });
    const double t = 0.3;
    const auto f = apply_multiplier(c, LinearFlow{3, 1, 1.0, t});
    for (int j = 0; j < 32; ++j) CHECK(f.samples()[j] == doctest::Approx(std::cos(2 * g.node(j) + 8 * t)));
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const std::size_t n = 100000;
  std::vector<cplx> v(n);
  std::vector<double> w(n), a(n);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {nd(rng), nd(rng)};
    w[i] = std::abs(nd(rng));
    a[i] = nd(rng);
  }
  CHECK(kernels::serial::weighted_energy(v, w) == kernels::parallel::weighted_energy(v, w));
  CHECK(kernels::serial::weighted_inner(v, v, w) == kernels::parallel::weighted_inner(v, v, w));
  CHECK(kernels::serial::sum(a) == kernels::parallel::sum(a));
  CHECK(kernels::serial::max_abs(a) == kernels::parallel::max_abs(a));
}

TEST_CASE("padded inverse interpolates band-limited fields") {
  const Grid g = Grid::make(2 * pi, 32);
  const auto c = sample(g, [](double x) { return std::sin(5 * x); });
  const auto fine = fft::padded_inverse(c.spectrum(), 2);
  for (int j = 0; j < 64; ++j) CHECK(fine[j] == doctest::Approx(std::sin(5 * 2 * pi * j / 64)).epsilon(1e-13));
}
