#pragma once

#include <vector>

#include "gevreyflow/dynamics/evolution.hpp"
#include "gevreyflow/harness/config.hpp"
#include "gevreyflow/harness/report.hpp"

namespace gevreyflow {

Grid make_grid(const ScenarioConfig& cfg);
Equation make_equation(const ScenarioConfig& cfg, const Grid& grid);
/// Dealiased initial components (two for the coupled system).
std::vector<SpectralField> initial_data(const ScenarioConfig& cfg, const Grid& grid);

/// Exact invariants I0, I1, I2 of mKdV (sigma = 0) with the drift of each
/// over [0, t_end]; soliton fidelity and the dt-halving order check.
ExperimentReport run_conservation(const ScenarioConfig& cfg);
/// Drift D(sigma) of A_sigma over the lifespan window, its log-log slope,
/// the energy-rate identity, and the small-sigma scaling of F and G.
ExperimentReport run_sigma_scaling(const ScenarioConfig& cfg);
/// L^2 decay under damping, the M_sigma rate identity and the constant-damping equality.
ExperimentReport run_damping_decay(const ScenarioConfig& cfg);
/// Windowed iteration with sigma from the selection rule and calibrated C1.
ExperimentReport run_global_iteration(const ScenarioConfig& cfg);
/// Radius estimate along a defocusing run against the calibrated envelope,
/// plus a travelling-soliton control.
ExperimentReport run_radius_tracking(const ScenarioConfig& cfg);
/// Coupled-system analogue of run_global_iteration and the w2 = 0 reduction.
ExperimentReport run_coupled(const ScenarioConfig& cfg);
/// Randomized property suite and the triple-cosh lattice certification.
ExperimentReport run_inequality_suite(const ScenarioConfig& cfg);

/// Validates the config, runs the scenario named by scenario.id and fills in
/// the config echo and wall-clock time.
ExperimentReport run_scenario(const ScenarioConfig& cfg);

}  // namespace gevreyflow
