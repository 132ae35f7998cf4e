#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "gevreyflow/analytics/norms.hpp"
#include "gevreyflow/dynamics/damping.hpp"
#include "gevreyflow/dynamics/evolution.hpp"
#include "gevreyflow/dynamics/exact.hpp"
#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

using namespace gevreyflow;
using std::numbers::pi;

namespace {

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.samples().size(); ++j) m = std::max(m, std::abs(a.samples()[j] - b.samples()[j]));
  return m;
}

SpectralField final_state(const EvolutionSpec& spec, const std::vector<SpectralField>& init, int component = 0) {
  const auto traj = integrate(spec, init);
  return traj.snapshots.back().fields[static_cast<std::size_t>(component)];
}

SpectralField bump(const Grid& g, double amp, double width = 1.0) {
  return dealias(sample(g, [&](double x) { return amp / std::cosh(width * (x - 0.5 * g.length())); }));
}

}  // namespace

TEST_CASE("soliton satisfies the travelling-wave equation to 1e-9 at N = 1024, L = 80") {
  const Grid g = Grid::make(80.0, 1024);
  const auto s = soliton(g, 1.0, 40.0);
  CHECK(s.speed == doctest::Approx(1.0));
  const auto u = dealias(s.field);
  const auto rhs = rhs_mkdv(u, 1);
  const auto ux = apply_multiplier(u, Deriv{1});
  double residual = 0;
  for (int j = 0; j < g.modes(); ++j) residual = std::max(residual, std::abs(rhs.samples()[j] + s.speed * ux.samples()[j]));
  CHECK(residual <= 1e-9);
}

TEST_CASE("soliton construction preconditions") {
  const Grid g = Grid::make(64.0, 512);
  CHECK_THROWS_AS(soliton(g, 0.0, 32.0), ConfigError);
  CHECK_THROWS_AS(soliton(g, 0.5, 32.0), ConfigError);  // sech(16) > 1e-12
  const auto s = soliton(g, 2.0, 10.0);
  CHECK(s.field.max_abs() == doctest::Approx(2 * std::sqrt(6.0)).epsilon(1e-6));
}

TEST_CASE("translate is an exact periodic shift") {
  const Grid g = Grid::make(2 * pi, 32);
  const auto c = sample(g, [](double x) { return std::cos(3 * x); });
  const auto t = translate(c, 0.25);
  for (int j = 0; j < 32; ++j) CHECK(t.samples()[j] == doctest::Approx(std::cos(3 * (g.node(j) - 0.25))));
  CHECK(relative_l2(translate(c, 2 * pi), c) < 1e-14);
}

TEST_CASE("mKdV soliton travels at speed k^2") {
  const Grid g = Grid::make(64.0, 512);
  const auto s = soliton(g, 1.0, 32.0);
  EvolutionSpec spec{MKdV{1}, 1e-3, 0.5, 500};
  const auto u = final_state(spec, {dealias(s.field)});
  CHECK(relative_l2(u, translate(dealias(s.field), 0.5)) < 1e-8);
}

TEST_CASE("zero data stays exactly zero") {
  const Grid g = Grid::make(64.0, 128);
  EvolutionSpec spec{MKdV{-1}, 1e-3, 0.1, 10};
  CHECK(final_state(spec, {zero_field(g)}).max_abs() == 0.0);
}

TEST_CASE("linear flows match the exact dispersion relation") {
  const Grid g = Grid::make(2 * pi, 64);
  const auto u0 = dealias(sample(g, [](double x) { return std::cos(2 * x) + 0.5 * std::sin(5 * x); }));
  const double t = 0.37;

  SUBCASE("Airy: u_t + u_xxx = 0") {
    EvolutionSpec spec{MKdV{1}, 1e-3, t, 370};
    spec.nonlinear = false;
    CHECK(max_diff(final_state(spec, {u0}), apply_multiplier(u0, LinearFlow{3, 1, 1.0, t})) < 1e-12);
  }
  SUBCASE("fifth order: v_t - d^5 v = 0") {
    EvolutionSpec spec{MKdVm{5, -1, DampingProfile::constant(1e-300)}, 1e-3, t, 370};
    spec.nonlinear = false;
    CHECK(max_diff(final_state(spec, {u0}), apply_multiplier(u0, LinearFlow{5, 1, 1.0, t})) < 1e-12);
  }
  SUBCASE("coupled second component disperses with alpha") {
    EvolutionSpec spec{Coupled{0.5, -1, DampingProfile::constant(1e-300), DampingProfile::constant(1e-300)}, 1e-3, t,
                       370};
    spec.nonlinear = false;
    CHECK(max_diff(final_state(spec, {u0, u0}, 1), apply_multiplier(u0, LinearFlow{3, 1, 0.5, t})) < 1e-12);
  }
}

TEST_CASE("constant damping gives the exact exponential decay") {
  const Grid g = Grid::make(64.0, 256);
  const auto v0 = bump(g, 0.7);
  const double lambda = 0.8, t = 0.5;
  EvolutionSpec spec{MKdVm{5, -1, DampingProfile::constant(lambda)}, 2e-4, t, 2500};
  const auto v = final_state(spec, {v0});
  CHECK(functional_M(v, 0) == doctest::Approx(std::exp(-2 * lambda * t) * functional_M(v0, 0)).epsilon(1e-10));
}

TEST_CASE("integrator steps are reversible") {
  const Grid g = Grid::make(64.0, 256);
  const auto u0 = bump(g, 1.0);
  Integrator integ(EvolutionSpec{MKdV{-1}, 1e-3, 1.0, 1}, g);
  std::vector<Spectrum> state{Spectrum(u0.spectrum().begin(), u0.spectrum().end())};
  auto fwd = integ.step(state, 1e-3);
  auto back = integ.step(fwd, -1e-3);
  double err = 0;
  for (std::size_t k = 0; k < back[0].size(); ++k) err = std::max(err, std::abs(back[0][k] - state[0][k]));
  CHECK(err < 1e-12);
}

TEST_CASE("integrate validates its inputs") {
  const Grid g = Grid::make(64.0, 128);
  const Grid h = Grid::make(32.0, 128);
  const auto u = bump(g, 1.0);
  CHECK_THROWS_AS(validate(Equation{MKdV{0}}), ConfigError);
  CHECK_THROWS_AS(validate(Equation{MKdVm{4, -1}}), ConfigError);
  CHECK_THROWS_AS(validate(Equation{MKdVm{1, -1}}), ConfigError);
  CHECK_NOTHROW(validate(Equation{MKdVm{3, -1}}));
  CHECK_THROWS_AS(validate(Equation{Coupled{1.0, -1}}), ConfigError);
  CHECK_THROWS_AS(integrate(EvolutionSpec{MKdV{1}, 1e-3, 1.0, 1}, {u, u}, [](double, const auto&) { return true; }),
                  ConfigError);
  CHECK_THROWS_AS(integrate(EvolutionSpec{Coupled{}, 1e-3, 1.0, 1}, {u, bump(h, 1.0)},
                            [](double, const auto&) { return true; }),
                  ConfigError);
  CHECK_THROWS_AS(integrate(EvolutionSpec{MKdV{1}, 0.0, 1.0, 1}, {u}, [](double, const auto&) { return true; }),
                  ConfigError);
  SUBCASE("dt guard") {
    const auto big = bump(g, 30.0);
    CHECK(max_stable_dt(MKdV{1}, {big}) < 1e-3);
    CHECK_THROWS_AS(integrate(EvolutionSpec{MKdV{1}, 1e-3, 1.0, 1}, {big}, [](double, const auto&) { return true; }),
                    ConfigError);
  }
  SUBCASE("non-finite data aborts") {
    std::vector<double> s(u.samples().begin(), u.samples().end());
    s[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(integrate(EvolutionSpec{MKdV{1}, 1e-4, 1e-3, 1}, {analyze(s, g)},
                              [](double, const auto&) { return true; }),
                    DivergenceError);
  }
}

TEST_CASE("observer cadence and early stop") {
  const Grid g = Grid::make(64.0, 128);
  const auto u = bump(g, 0.5);
  std::vector<double> times;
  integrate(EvolutionSpec{MKdV{-1}, 1e-2, 0.1, 3}, {u}, [&](double t, const auto&) {
    times.push_back(t);
    return true;
  });
  REQUIRE(times.size() == 4);  // 0, 3, 6, 9 steps
  CHECK(times[1] == doctest::Approx(0.03));
  int calls = 0;
  integrate(EvolutionSpec{MKdV{-1}, 1e-2, 0.1, 1}, {u}, [&](double, const auto&) { return ++calls < 2; });
  CHECK(calls == 2);
}

TEST_CASE("damping profiles and certification") {
  const Grid g = Grid::make(64.0, 256);
  const auto c = DampingProfile::constant(2.0);
  CHECK(c(1.3) == 2.0);
  CHECK(c.sup_derivative(1) == 0.0);
  CHECK(c.is_constant());

  const auto r = DampingProfile::raised_cosine(1.0, 0.5, 64.0);
  CHECK(r(0.0) == doctest::Approx(2.0));
  CHECK(r(32.0) == doctest::Approx(1.0));
  CHECK(r.sup_derivative(3) == doctest::Approx(0.5 * std::pow(2 * pi / 64, 3)));
  CHECK(derivative_bound_ratio(r, g) <= 1.0 + 1e-12);

  CHECK_NOTHROW(make_damping(DampingForm::RaisedCosine, 1.0, 0.5, g, 1.0));
  CHECK_THROWS_WITH_AS(make_damping(DampingForm::Constant, 0.0, 0.0, g, 1.0), doctest::Contains("(A1)"), ConfigError);
  CHECK_THROWS_WITH_AS(make_damping(DampingForm::RaisedCosine, 1.0, 0.5, g, 20.0), doctest::Contains("(A3)"),
                       ConfigError);
  CHECK(damping_form_from_string("raised-cosine") == DampingForm::RaisedCosine);
  CHECK_THROWS_AS(damping_form_from_string("gaussian"), ConfigError);
}
