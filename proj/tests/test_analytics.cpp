#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gevreyflow/analytics/functionals.hpp"
#include "gevreyflow/analytics/index.hpp"
#include "gevreyflow/analytics/norms.hpp"
#include "gevreyflow/analytics/radius.hpp"
#include "gevreyflow/dynamics/evolution.hpp"
#include "gevreyflow/dynamics/exact.hpp"
#include "gevreyflow/error.hpp"
#include "gevreyflow/harness/report.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

using namespace gevreyflow;
using std::numbers::pi;

namespace {

SpectralField centred(const Grid& g, double amp, double width) {
  return dealias(sample(g, [&](double x) { return amp / std::cosh(width * std::remainder(x - 0.5 * g.length(), g.length())); }));
}

SpectralField as_field(const Spectrum& s, const Grid& g) { return synthesize(s, g); }

Spectrum spectrum_of(const SpectralField& f) { return Spectrum(f.spectrum().begin(), f.spectrum().end()); }

}  // namespace

TEST_CASE("weighted norms") {
  const Grid g = Grid::make(64.0, 512);
  const auto u = centred(g, 1.0, 1.0);
  CHECK(hsigma_norm(u, 0, 0) * hsigma_norm(u, 0, 0) == doctest::Approx(spectral_energy(u)).epsilon(1e-13));
  CHECK(hsigma_norm(u, 0, 0) * hsigma_norm(u, 0, 0) == doctest::Approx(2.0).epsilon(1e-12));  // int sech^2
  CHECK(functional_M(u, 0.3) == doctest::Approx(std::pow(hsigma_norm(u, 0.3, 0), 2)));
  CHECK(functional_N(u, u, 0.3) == doctest::Approx(2 * functional_M(u, 0.3)));
  CHECK(gsigma_norm(u, 0.3, 1) >= hsigma_norm(u, 0.3, 1));
  CHECK(gsigma_norm(u, 0.3, 1) <= 2 * hsigma_norm(u, 0.3, 1));
  CHECK(hsigma_norm(u, 0.5, 0) > hsigma_norm(u, 0.2, 0));
  CHECK_THROWS_AS(hsigma_norm(u, -0.1, 0), DomainError);

  SUBCASE("single mode has a closed form") {
    const Grid h = Grid::make(2 * pi, 32);
    Spectrum s(32, 0.0);
    s[3] = s[29] = 0.5;
    const auto c = as_field(s, h);
    // L * 2 * (1/2)^2 * (1+3)^{2s} * cosh^2(3 sigma)
    const double expect = std::sqrt(2 * pi * 0.5 * 16.0 * std::pow(std::cosh(0.9), 2));
    CHECK(hsigma_norm(c, 0.3, 1.0) == doctest::Approx(expect).epsilon(1e-13));
  }
  SUBCASE("overflowing norms raise, huge but finite ones do not") {
    const Grid h = Grid::make(2 * pi, 32);
    Spectrum s(32, 0.0);
    s[3] = s[29] = 1e-200;
    CHECK(std::isfinite(hsigma_norm(as_field(s, h), 200.0, 0)));
    s[3] = s[29] = 1.0;
    CHECK_THROWS_AS(hsigma_norm(as_field(s, h), 400.0, 0), OverflowError);
  }
  SUBCASE("interpolation bound") {
    for (double s1 : {0.1, 0.5, 1.0, 2.0}) {
      const auto chk = interpolation_check(u, s1);
      CHECK(chk.holds);
      CHECK(chk.margin >= 0);
    }
  }
}

TEST_CASE("A_sigma at sigma = 0 reproduces the soliton invariants") {
  const Grid g = Grid::make(64.0, 1024);
  const auto u = dealias(soliton(g, 1.0, 32.0).field);
  const auto a = functional_A(u, 0.0, 1);
  CHECK(a.term("I0") == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(a.term("I1a") == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(a.term("T4") == doctest::Approx(-8.0).epsilon(1e-12));
  double sum = 0;
  for (const auto& [name, v] : a.terms) sum += v;
  CHECK(a.total == doctest::Approx(sum));
  CHECK_THROWS_AS(a.term("nope"), std::out_of_range);
  CHECK_THROWS_AS(functional_A(u, 0.1, 0), DomainError);
}

TEST_CASE("F and G vanish at sigma = 0 and scale as sigma^2 for smooth data") {
  const Grid g = Grid::make(64.0, 512);
  const auto w = dealias(sample(g, [](double x) { return std::exp(-0.5 * (x - 32) * (x - 32)); }));
  const auto a = DampingProfile::raised_cosine(1.0, 0.5, 64.0);
  CHECK(operator_F(w, 0.0, -1).max_abs() == 0.0);
  CHECK(operator_G(w, a, 0.0).max_abs() == 0.0);
  CHECK(operator_G(w, DampingProfile::constant(1.0), 0.4).max_abs() < 1e-14);

  std::vector<double> s{1e-3, 3e-3, 1e-2, 3e-2}, fn, gn;
  for (double x : s) {
    fn.push_back(hsigma_norm(operator_F(w, x, -1), 0, 0));
    gn.push_back(hsigma_norm(operator_G(w, a, x), 0, 0));
  }
  CHECK(fit_loglog("F", s, fn).slope == doctest::Approx(2.0).epsilon(0.02));
  CHECK(fit_loglog("G", s, gn).slope == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("energy-rate identity matches a centred difference along the mKdV flow") {
  const Grid g = Grid::make(64.0, 256);
  const auto u0 = centred(g, 0.8, 0.5);
  const double dt = 1e-4;
  Integrator integ(EvolutionSpec{MKdV{-1}, dt, 1.0, 1}, g);
  // Move off the symmetric t = 0 state, where the rate vanishes.
  std::vector<Spectrum> state{spectrum_of(u0)};
  for (int i = 0; i < 500; ++i) state = integ.step(state, dt);
  const auto plus = as_field(integ.step(state, dt)[0], g);
  const auto minus = as_field(integ.step(state, -dt)[0], g);
  const auto u = as_field(state[0], g);
  for (double sigma : {0.1, 0.3}) {
    const double fd = (functional_A(plus, sigma, -1).total - functional_A(minus, sigma, -1).total) / (2 * dt);
    const double rate = energy_rate_A(u, sigma, -1).total;
    CHECK(std::abs(rate) > 1e-8);
    CHECK(fd == doctest::Approx(rate).epsilon(1e-5));
  }
  CHECK(std::abs(energy_rate_A(u, 0.0, -1).total) < 1e-14);
}

TEST_CASE("mass-rate identity along the damped flow") {
  const Grid g = Grid::make(64.0, 256);
  const auto v0 = centred(g, 0.7, 1.0);
  const auto a = DampingProfile::raised_cosine(1.0, 0.5, 64.0);
  const double dt = 1e-4;
  Integrator integ(EvolutionSpec{MKdVm{5, -1, a}, dt, 1.0, 1}, g);
  std::vector<Spectrum> state{spectrum_of(v0)};
  for (int i = 0; i < 200; ++i) state = integ.step(state, dt);
  const auto plus = as_field(integ.step(state, dt)[0], g);
  const auto minus = as_field(integ.step(state, -dt)[0], g);
  const auto v = as_field(state[0], g);
  for (double sigma : {0.0, 0.3}) {
    const auto r = mass_rate_M(v, a, sigma, -1, 5);
    const double fd = (functional_M(plus, sigma) - functional_M(minus, sigma)) / (2 * dt);
    CHECK(r.lhs_rate == doctest::Approx(r.damping_term + r.fg_term));
    CHECK(fd == doctest::Approx(r.lhs_rate).epsilon(1e-6));
  }
  const auto r0 = mass_rate_M(v, a, 0.0, -1, 5);
  CHECK(std::abs(r0.fg_term) < 1e-14);
  CHECK(r0.damping_term < -2 * 1.0 * functional_M(v, 0) * (1 - 1e-12));
  CHECK_THROWS_AS(mass_rate_M(v, a, 0.1, -1, 4), DomainError);
}

TEST_CASE("analytic norm of the damping coefficient") {
  const auto c = DampingProfile::constant(1.5);
  CHECK(damping_A_norm(c, 2.0) == doctest::Approx(1.5));

  const double L = 64, lambda = 1, eps = 0.5, R = 2 * pi / L, sigma = 1.0;
  const auto a = DampingProfile::raised_cosine(lambda, eps, L);
  double direct = lambda + 2 * eps;
  double term = 1;
  for (int k = 1; k < 200; ++k) {
    term *= sigma * R / k;
    direct += std::pow(k + 1.0, 0.25) * term * eps;
  }
  CHECK(damping_A_norm(a, sigma, 40) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(damping_A_norm(a, sigma, 8) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(damping_A_norm(a, sigma, 8) >= direct * (1 - 1e-15));
  CHECK_THROWS_AS(damping_A_norm(a, 20.0), DivergenceError);
  CHECK_THROWS_AS(damping_A_norm(a, 1.0, 4), DomainError);
}

TEST_CASE("index formulas are exact rationals") {
  CHECK(s_index(5) == Rational::make(-1, 4));
  CHECK(s_index(7) == Rational::make(-43, 60));
  CHECK(s_index(9) == Rational::make(-7, 6));
  CHECK(theta_max(5) == Rational::make(1, 4));
  CHECK(theta_max(7) == Rational::make(43, 60));
  CHECK(theta_max(9) == Rational::make(1, 1));
  CHECK(s_index(5).str() == "-1/4");
  CHECK(Rational::make(2, -4) == Rational::make(-1, 2));
  CHECK_THROWS_AS(s_index(3), DomainError);
  CHECK_THROWS_AS(s_index(6), DomainError);
}

TEST_CASE("lifespan and sigma selection") {
  CHECK(lifespan_T0(0.5, 1.5) == doctest::Approx(1.0 / 9.0));
  CHECK(lifespan_T0(0.0, 0.0, 2.0, 3.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(lifespan_T0(1, 1, 0.0), DomainError);
  CHECK_THROWS_AS(lifespan_T0(1, 1, 1.0, 1.0), DomainError);
  CHECK(lifespan_T0_coupled(0.5, 1.0, 2.0, 1.0) == doctest::Approx(1.0 / 16.0));

  const double q = -std::expm1(-0.2);
  const auto wide = sigma_choice(1.0, 1.0, 0.1, 0.01, 2.0, 3.0, 0.5);
  CHECK(wide.branch == 1);
  CHECK(wide.sigma == 1.0);
  const auto data = sigma_choice(1.0, 1.0, 0.1, 1.0, 2.0, 3.0, 0.5);
  CHECK(data.branch == 3);
  CHECK(data.sigma == doctest::Approx(std::pow(q / 6.0, 2.0)));
  const auto damp = sigma_choice(1.0, 1.0, 0.1, 1.0, 20.0, 0.01, 1.0);
  CHECK(damp.branch == 2);
  CHECK(damp.sigma == doctest::Approx(q / 40.0));
  CHECK_THROWS_AS(sigma_choice(1.0, 1.0, 0.1, 1.0, 2.0, 3.0, 0.0), DomainError);
}

TEST_CASE("radius estimate") {
  SUBCASE("synthetic exponential spectrum is recovered to 1e-10") {
    const Grid g = Grid::make(20.0, 256);
    Spectrum s(256, 0.0);
    for (int k = 0; k < 128; ++k) {
      const double c = std::exp(-0.7 * 2 * pi * k / 20.0);
      s[g.index_of(k)] = c;
      if (k > 0) s[g.index_of(-k)] = c;
    }
    const auto fit = radius_estimate(as_field(s, g));
    CHECK(fit.sigma_hat == doctest::Approx(0.7).epsilon(1e-10));
    CHECK_FALSE(fit.super_exponential);
    CHECK(fit.modes_used >= 12);
  }
  SUBCASE("soliton radius is pi / (2k)") {
    const Grid g = Grid::make(64.0, 512);
    const auto fit = radius_estimate(dealias(soliton(g, 1.0, 32.0).field));
    CHECK(fit.sigma_hat == doctest::Approx(pi / 2).epsilon(0.01));
  }
  SUBCASE("zero data is underresolved") {
    const Grid g = Grid::make(64.0, 128);
    CHECK_THROWS_AS(radius_estimate(zero_field(g)), UnderresolvedError);
  }
}
