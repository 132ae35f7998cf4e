#pragma once

#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "gevreyflow/dynamics/damping.hpp"
#include "gevreyflow/spectral/field.hpp"

namespace gevreyflow {

/// u_t + u_xxx + mu u^2 u_x = 0
struct MKdV {
  int mu = 1;
};

/// v_t + (-1)^{j+1} d^m v + mu v^2 v_x + a(x) v = 0,  m = 2j + 1.
/// m >= 5 is the studied range; m = 3 is accepted as a test configuration.
struct MKdVm {
  int m = 5;
  int mu = -1;
  DampingProfile damping = DampingProfile::constant(1.0);
};

/// w1_t + w1_xxx + mu (w1 w2^2)_x + a1 w1 = 0
/// w2_t + alpha w2_xxx + mu (w1^2 w2)_x + a2 w2 = 0,  0 < alpha < 1.
struct Coupled {
  double alpha = 0.5;
  int mu = -1;
  DampingProfile damping1 = DampingProfile::constant(1.0);
  DampingProfile damping2 = DampingProfile::constant(1.0);
};

using Equation = std::variant<MKdV, MKdVm, Coupled>;

struct EvolutionSpec {
  Equation equation = MKdV{};
  double dt = 2e-4;
  double t_end = 1.0;
  int record_every = 1;
  /// Test hook: drop the cubic term, leaving the (damped) linear flow.
  bool nonlinear = true;
};

/// Number of field components the equation evolves (1 or 2).
int component_count(const Equation& eq);
/// Dispersion order of component `c`.
int dispersion_order(const Equation& eq);
/// Throws ConfigError if mu, m or alpha are out of range.
void validate(const Equation& eq);

/// Largest dt allowed by the advective guard 0.5 dx / (max|u0|^2 + sup a + 1).
double max_stable_dt(const Equation& eq, const std::vector<SpectralField>& init);

/// Right-hand sides. Inputs are expected to be dealiased (|k| <= N/4); the
/// cubic products are formed on the 2x grid and truncated to that band.
SpectralField rhs_mkdv(const SpectralField& u, int mu);
SpectralField rhs_mkdvm(const SpectralField& v, int m, int mu, const DampingProfile& a);
std::pair<SpectralField, SpectralField> rhs_coupled(const SpectralField& w1, const SpectralField& w2,
                                                    double alpha, int mu, const DampingProfile& a1,
                                                    const DampingProfile& a2);

/// dealias(u^3) through the 2x grid: exact on the kept band for |k| <= N/4 input.
SpectralField cube_dealiased(const SpectralField& u);

struct Snapshot {
  double time = 0.0;
  std::vector<SpectralField> fields;
};

struct Trajectory {
  EvolutionSpec spec;
  std::vector<Snapshot> snapshots;

  std::vector<double> times() const;
};

using Spectrum = std::vector<cplx>;

/// Integrating-factor RK4 stepper. The dispersive part of each component is
/// advanced exactly by exp(i alpha xi^m t); RK4 handles the cubic and
/// damping terms in that frame. The state is a list of dealiased spectra.
class Integrator {
 public:
  Integrator(EvolutionSpec spec, Grid grid);

  const EvolutionSpec& spec() const noexcept { return spec_; }
  const Grid& grid() const noexcept { return grid_; }

  /// One step of signed size dt (negative steps run the flow backwards).
  std::vector<Spectrum> step(const std::vector<Spectrum>& state, double dt);
  /// Nonlinear and damping terms only, in the physical frame.
  std::vector<Spectrum> forcing(const std::vector<Spectrum>& state) const;
  /// Full right-hand side (dispersion + forcing).
  std::vector<Spectrum> rhs(const std::vector<Spectrum>& state) const;

 private:
  void refresh_propagators(double dt);

  EvolutionSpec spec_;
  Grid grid_;
  std::vector<std::vector<double>> damping_samples_;
  std::vector<double> ik_;  // i xi stored as xi; applied as (i xi)
  double cached_dt_ = 0.0;
  std::vector<std::vector<cplx>> half_step_;  // exp(L dt/2) per component
  std::vector<std::vector<cplx>> linear_symbol_;  // L per component
};

/// Observer called at t = 0 and every record_every steps. Returning false
/// stops the integration early.
using StepObserver = std::function<bool(double time, const std::vector<SpectralField>& fields)>;

/// Runs the flow from `init` to spec.t_end and reports the recorded states.
/// Errors: ConfigError on a dt-guard violation or grid mismatch,
/// DivergenceError on NaN/Inf or once max|u| exceeds 1e6.
void integrate(const EvolutionSpec& spec, const std::vector<SpectralField>& init, const StepObserver& observer);

Trajectory integrate(const EvolutionSpec& spec, const std::vector<SpectralField>& init);

}  // namespace gevreyflow
