#include "gevreyflow/dynamics/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/fft.hpp"
#include "gevreyflow/spectral/multiplier.hpp"
#include "gevreyflow/spectral/products.hpp"

namespace gevreyflow {

namespace {

constexpr double kBlowUp = 1e6;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_mu(int mu) {
  if (mu != 1 && mu != -1) throw ConfigError("mu must be +1 or -1, got " + std::to_string(mu));
}

// Spectrum of (i xi) f without going through the symbol machinery.
void times_i_xi(std::span<const cplx> f, std::span<const double> xi, std::span<cplx> out) {
  const auto n = f.size();
  for (std::size_t j = 0; j < n; ++j) out[j] = cplx(-xi[j] * f[j].imag(), xi[j] * f[j].real());
  out[n / 2] = 0.0;
}

void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

double coefficient_l1(std::span<const cplx> f) {
  double s = 0.0;
  for (const cplx& c : f) s += std::abs(c);
  return s;
}

}  // namespace

int component_count(const Equation& eq) { return std::holds_alternative<Coupled>(eq) ? 2 : 1; }

int dispersion_order(const Equation& eq) {
  if (const auto* e = std::get_if<MKdVm>(&eq)) return e->m;
  return 3;
}

void validate(const Equation& eq) {
  std::visit(overloaded{
                 [](const MKdV& e) { check_mu(e.mu); },
                 [](const MKdVm& e) {
                   check_mu(e.mu);
                   if (e.m < 3 || e.m % 2 == 0) {
                     throw ConfigError("mKdVm dispersion order m must be odd (m = 2j+1), got " +
                                       std::to_string(e.m));
                   }
                 },
                 [](const Coupled& e) {
                   check_mu(e.mu);
                   if (!(e.alpha > 0.0 && e.alpha < 1.0)) {
                     throw ConfigError("coupled system requires 0 < alpha < 1, got " + std::to_string(e.alpha));
                   }
                 },
             },
             eq);
}

double max_stable_dt(const Equation& eq, const std::vector<SpectralField>& init) {
  double umax = 0.0;
  for (const auto& f : init) umax = std::max(umax, f.max_abs());
  const double sup_a = std::visit(overloaded{
                                      [](const MKdV&) { return 0.0; },
                                      [](const MKdVm& e) { return e.damping.sup(); },
                                      [](const Coupled& e) {
                                        return std::max(e.damping1.sup(), e.damping2.sup());
                                      },
                                  },
                                  eq);
  return 0.5 * init.front().grid().spacing() / (umax * umax + sup_a + 1.0);
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.time);
  return t;
}

// ---------------------------------------------------------------------------

Integrator::Integrator(EvolutionSpec spec, Grid grid) : spec_(std::move(spec)), grid_(std::move(grid)) {
  validate(spec_.equation);
  const auto xi = grid_.frequencies();
  ik_.assign(xi.begin(), xi.end());

  const auto n = static_cast<std::size_t>(grid_.modes());
  auto linear = [&](double alpha, int m) {
    std::vector<cplx> l(n);
    for (std::size_t j = 0; j < n; ++j) l[j] = cplx(0.0, alpha * std::pow(xi[j], m));
    l[n / 2] = 0.0;
    return l;
  };
  std::visit(overloaded{
                 [&](const MKdV&) { linear_symbol_.push_back(linear(1.0, 3)); },
                 [&](const MKdVm& e) {
                   linear_symbol_.push_back(linear(1.0, e.m));
                   damping_samples_.push_back(e.damping.sample(grid_));
                 },
                 [&](const Coupled& e) {
                   linear_symbol_.push_back(linear(1.0, 3));
                   linear_symbol_.push_back(linear(e.alpha, 3));
                   damping_samples_.push_back(e.damping1.sample(grid_));
                   damping_samples_.push_back(e.damping2.sample(grid_));
                 },
             },
             spec_.equation);
}

void Integrator::refresh_propagators(double dt) {
  if (dt == cached_dt_ && !half_step_.empty()) return;
  half_step_.clear();
  for (const auto& l : linear_symbol_) {
    std::vector<cplx> e(l.size());
    for (std::size_t j = 0; j < l.size(); ++j) e[j] = std::polar(1.0, l[j].imag() * dt / 2.0);
    e[e.size() / 2] = 0.0;
    half_step_.push_back(std::move(e));
  }
  cached_dt_ = dt;
}

std::vector<Spectrum> Integrator::forcing(const std::vector<Spectrum>& state) const {
  const auto n = static_cast<std::size_t>(grid_.modes());
  std::vector<Spectrum> out(state.size(), Spectrum(n, cplx(0.0, 0.0)));
  const bool nl = spec_.nonlinear;

  std::visit(overloaded{
                 [&](const MKdV& e) {
                   if (!nl) return;
                   Spectrum ux(n);
                   times_i_xi(state[0], ik_, ux);
                   out[0] = spectral::triple_product(state[0], state[0], ux);
                   for (auto& c : out[0]) c *= -static_cast<double>(e.mu);
                 },
                 [&](const MKdVm& e) {
                   if (nl) {
                     Spectrum vx(n);
                     times_i_xi(state[0], ik_, vx);
                     out[0] = spectral::triple_product(state[0], state[0], vx);
                     for (auto& c : out[0]) c *= -static_cast<double>(e.mu);
                   }
                   const auto av = spectral::multiply_nodes(damping_samples_[0], state[0]);
                   axpy(out[0], -1.0, av);
                 },
                 [&](const Coupled& e) {
                   if (nl) {
                     const auto p1 = spectral::triple_product(state[0], state[1], state[1]);
                     const auto p2 = spectral::triple_product(state[0], state[0], state[1]);
                     times_i_xi(p1, ik_, out[0]);
                     times_i_xi(p2, ik_, out[1]);
                     for (auto& c : out[0]) c *= -static_cast<double>(e.mu);
                     for (auto& c : out[1]) c *= -static_cast<double>(e.mu);
                   }
                   axpy(out[0], -1.0, spectral::multiply_nodes(damping_samples_[0], state[0]));
                   axpy(out[1], -1.0, spectral::multiply_nodes(damping_samples_[1], state[1]));
                 },
             },
             spec_.equation);
  return out;
}

std::vector<Spectrum> Integrator::rhs(const std::vector<Spectrum>& state) const {
  auto out = forcing(state);
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (std::size_t j = 0; j < out[c].size(); ++j) out[c][j] += linear_symbol_[c][j] * state[c][j];
  }
  return out;
}

std::vector<Spectrum> Integrator::step(const std::vector<Spectrum>& u, double dt) {
  refresh_propagators(dt);
  const std::size_t nc = u.size();
  const std::size_t n = u.front().size();

  auto combine = [&](auto&& fn) {
    std::vector<Spectrum> s(nc, Spectrum(n));
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t j = 0; j < n; ++j) s[c][j] = fn(c, j);
    }
    return s;
  };
  const auto& e = half_step_;

  const auto k1 = forcing(u);
  const auto k2 = forcing(combine([&](std::size_t c, std::size_t j) {
    return e[c][j] * (u[c][j] + 0.5 * dt * k1[c][j]);
  }));
  const auto k3 = forcing(combine([&](std::size_t c, std::size_t j) {
    return e[c][j] * u[c][j] + 0.5 * dt * k2[c][j];
  }));
  const auto k4 = forcing(combine([&](std::size_t c, std::size_t j) {
    return e[c][j] * e[c][j] * u[c][j] + dt * e[c][j] * k3[c][j];
  }));
  return combine([&](std::size_t c, std::size_t j) {
    const cplx e1 = e[c][j];
    const cplx e2 = e1 * e1;
    return e2 * u[c][j] + dt / 6.0 * (e2 * k1[c][j] + 2.0 * e1 * (k2[c][j] + k3[c][j]) + k4[c][j]);
  });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<SpectralField> to_fields(const std::vector<Spectrum>& state, const Grid& grid) {
  std::vector<SpectralField> out;
  out.reserve(state.size());
  for (const auto& s : state) out.push_back(synthesize(s, grid));
  return out;
}

void check_state(const std::vector<Spectrum>& state, double t) {
  for (const auto& s : state) {
    const double l1 = coefficient_l1(s);
    if (!std::isfinite(l1)) {
      std::ostringstream msg;
      msg << "integration diverged (non-finite state) at t = " << t;
      throw DivergenceError(msg.str());
    }
    if (l1 > kBlowUp) {
      const auto v = fft::inverse(s);
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      if (m > kBlowUp) {
        std::ostringstream msg;
        msg << "integration aborted: max|u| = " << m << " exceeds " << kBlowUp << " at t = " << t;
        throw DivergenceError(msg.str());
      }
    }
  }
}

}  // namespace

void integrate(const EvolutionSpec& spec, const std::vector<SpectralField>& init, const StepObserver& observer) {
  validate(spec.equation);
  const int nc = component_count(spec.equation);
  if (static_cast<int>(init.size()) != nc) {
    throw ConfigError("initial data has " + std::to_string(init.size()) + " components, equation needs " +
                      std::to_string(nc));
  }
  const Grid grid = init.front().grid();
  for (const auto& f : init) {
    if (!(f.grid() == grid)) throw ConfigError("initial components live on different grids");
  }
  if (!(spec.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(spec.t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  if (spec.record_every < 1) throw ConfigError("record_every must be >= 1");

  std::vector<Spectrum> state;
  for (const auto& f : init) {
    Spectrum s(f.spectrum().begin(), f.spectrum().end());
    dealias(s);
    state.push_back(std::move(s));
  }
  check_state(state, 0.0);
  const auto projected = to_fields(state, grid);
  const double guard = max_stable_dt(spec.equation, projected);
  if (spec.dt > guard) {
    std::ostringstream msg;
    msg << "dt = " << spec.dt << " violates the advective guard dt <= " << guard;
    throw ConfigError(msg.str());
  }

  Integrator stepper(spec, grid);
  const auto steps = static_cast<long>(std::llround(spec.t_end / spec.dt));
  if (!observer(0.0, projected)) return;
  for (long n = 1; n <= steps; ++n) {
    state = stepper.step(state, spec.dt);
    const double t = static_cast<double>(n) * spec.dt;
    check_state(state, t);
    if (n % spec.record_every == 0) {
      if (!observer(t, to_fields(state, grid))) return;
    }
  }
}

Trajectory integrate(const EvolutionSpec& spec, const std::vector<SpectralField>& init) {
  Trajectory traj{spec, {}};
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& fields) {
    traj.snapshots.push_back(Snapshot{t, fields});
    return true;
  });
  return traj;
}

// ---------------------------------------------------------------------------

SpectralField cube_dealiased(const SpectralField& u) {
  const auto s = spectral::triple_product(u.spectrum(), u.spectrum(), u.spectrum());
  return synthesize(s, u.grid());
}

SpectralField rhs_mkdv(const SpectralField& u, int mu) {
  EvolutionSpec spec;
  spec.equation = MKdV{mu};
  Integrator it(spec, u.grid());
  const auto r = it.rhs({Spectrum(u.spectrum().begin(), u.spectrum().end())});
  return synthesize(r[0], u.grid());
}

SpectralField rhs_mkdvm(const SpectralField& v, int m, int mu, const DampingProfile& a) {
  EvolutionSpec spec;
  spec.equation = MKdVm{m, mu, a};
  Integrator it(spec, v.grid());
  const auto r = it.rhs({Spectrum(v.spectrum().begin(), v.spectrum().end())});
  return synthesize(r[0], v.grid());
}

std::pair<SpectralField, SpectralField> rhs_coupled(const SpectralField& w1, const SpectralField& w2,
                                                    double alpha, int mu, const DampingProfile& a1,
                                                    const DampingProfile& a2) {
  EvolutionSpec spec;
  spec.equation = Coupled{alpha, mu, a1, a2};
  Integrator it(spec, w1.grid());
  const auto r = it.rhs({Spectrum(w1.spectrum().begin(), w1.spectrum().end()),
                         Spectrum(w2.spectrum().begin(), w2.spectrum().end())});
  return {synthesize(r[0], w1.grid()), synthesize(r[1], w1.grid())};
}

}  // namespace gevreyflow
