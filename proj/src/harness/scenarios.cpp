#include "gevreyflow/harness/scenarios.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "gevreyflow/analytics/functionals.hpp"
#include "gevreyflow/analytics/index.hpp"
#include "gevreyflow/analytics/norms.hpp"
#include "gevreyflow/analytics/radius.hpp"
#include "gevreyflow/dynamics/exact.hpp"
#include "gevreyflow/error.hpp"
#include "gevreyflow/inequalities/manifest.hpp"
#include "gevreyflow/inequalities/properties.hpp"
#include "gevreyflow/spectral/multiplier.hpp"

namespace gevreyflow {

namespace {

// High-frequency packet of the G scaling fit: G reaches its linear sigma
// regime only when sigma * |xi_W| >> 1.
constexpr double kPacketFrequency = 8.0;
constexpr double kPacketWidth = 0.25;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.samples().size(); ++j) m = std::max(m, std::abs(a.samples()[j] - b.samples()[j]));
  return m;
}

double relative_drift(double value, double initial) {
  const double d = std::abs(value - initial);
  return initial != 0.0 ? d / std::abs(initial) : d;
}

double boundary_ratio(const SpectralField& u) {
  const auto s = u.samples();
  const double peak = u.max_abs();
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(s.front()), std::abs(s.back())) / peak;
}

DampingProfile damping_from(const ScenarioConfig& cfg, const std::string& section, const Grid& grid) {
  return make_damping(damping_form_from_string(cfg.text(section + ".form")), cfg.real(section + ".lambda"),
                      cfg.real(section + ".epsilon"), grid, cfg.real("analysis.sigma0"));
}

EvolutionSpec evolution_from(const ScenarioConfig& cfg, const Grid& grid) {
  EvolutionSpec spec;
  spec.equation = make_equation(cfg, grid);
  spec.dt = cfg.real("evolution.dt");
  spec.t_end = cfg.real("evolution.t_end");
  spec.record_every = cfg.integer("evolution.record_every");
  return spec;
}

struct Invariants {
  double i0, i1, i2;
};

Invariants invariants(const SpectralField& u, int mu) {
  const auto a = functional_A(u, 0.0, mu);
  return {a.term("I0"), a.term("I1a") + a.term("T4"), a.term("I2a") + a.term("T5") + a.term("T6")};
}

// Centered finite-difference check of a rate identity sampled every `stride`
// steps: value(n-1), value(n+1) and rate(n) for n = stride, 2 stride, ...
class RateProbe {
 public:
  RateProbe(int stride, double dt) : stride_(stride), dt_(dt) {}

  template <class Value, class Rate>
  void observe(long n, Value&& value, Rate&& rate) {
    if (n < stride_ - 1) return;
    const long r = n % stride_;
    if (r == stride_ - 1) {
      minus_ = value();
      armed_ = true;
    } else if (r == 0 && armed_) {
      pending_rate_ = rate();
      t_ = static_cast<double>(n) * dt_;
    } else if (r == 1 && armed_ && n > 1) {
      const double fd = (value() - minus_) / (2.0 * dt_);
      samples_.push_back({t_, fd, pending_rate_});
      armed_ = false;
    }
  }

  /// max |fd - rate| / max |rate|
  double residual() const {
    double num = 0.0, den = 0.0;
    for (const auto& s : samples_) {
      num = std::max(num, std::abs(s[1] - s[2]));
      den = std::max(den, std::abs(s[2]));
    }
    return den > 0.0 ? num / den : num;
  }
  const std::vector<std::array<double, 3>>& samples() const { return samples_; }

 private:
  int stride_;
  double dt_;
  double minus_ = 0.0;
  double pending_rate_ = 0.0;
  double t_ = 0.0;
  bool armed_ = false;
  std::vector<std::array<double, 3>> samples_;
};

std::string sigma_label(double s) { return "sigma=" + fmt(s); }

}  // namespace

// ---------------------------------------------------------------------------

Grid make_grid(const ScenarioConfig& cfg) { return Grid::make(cfg.real("grid.L"), cfg.integer("grid.N")); }

Equation make_equation(const ScenarioConfig& cfg, const Grid& grid) {
  const std::string eq = cfg.text("evolution.equation");
  const int mu = cfg.integer("evolution.mu");
  if (eq == "mkdv") return MKdV{mu};
  if (eq == "mkdvm") return MKdVm{cfg.integer("evolution.m"), mu, damping_from(cfg, "damping", grid)};
  if (eq == "coupled") {
    return Coupled{cfg.real("evolution.alpha"), mu, damping_from(cfg, "damping", grid),
                   damping_from(cfg, "damping2", grid)};
  }
  throw ConfigError("unknown equation '" + eq + "'");
}

std::vector<SpectralField> initial_data(const ScenarioConfig& cfg, const Grid& grid) {
  const std::string profile = cfg.text("initial.profile");
  const double L = grid.length();
  const double c = 0.5 * L + cfg.real("initial.shift");
  const double A = cfg.real("initial.amplitude");
  const double k = cfg.real("initial.width");
  const double f = cfg.real("initial.frequency");
  auto wrap = [&](double x) { return std::remainder(x - c, L); };

  SpectralField u = zero_field(grid);
  if (profile == "soliton") {
    u = soliton(grid, k, c).field;
  } else if (profile == "sech") {
    u = sample(grid, [&](double x) { return A / std::cosh(k * wrap(x)); });
  } else if (profile == "gaussian") {
    u = sample(grid, [&](double x) {
      const double z = k * wrap(x);
      return A * std::exp(-0.5 * z * z);
    });
  } else if (profile == "packet") {
    u = sample(grid, [&](double x) { return A * std::cos(f * x) / std::cosh(k * wrap(x)); });
  } else if (profile != "zero") {
    throw ConfigError("unknown initial profile '" + profile + "'");
  }
  u = dealias(u);

  std::vector<SpectralField> out{u};
  if (cfg.text("evolution.equation") == "coupled") {
    const double r = cfg.real("initial.second");
    std::vector<double> s(u.samples().begin(), u.samples().end());
    for (double& v : s) v *= r;
    out.push_back(dealias(analyze(s, grid)));
  }
  return out;
}

// ---------------------------------------------------------------------------

ExperimentReport run_conservation(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<MKdV>(spec.equation)) throw ConfigError("conservation needs evolution.equation = mkdv");
  const int mu = std::get<MKdV>(spec.equation).mu;
  const auto init = initial_data(cfg, grid);
  const bool is_soliton = cfg.text("initial.profile") == "soliton";

  const Invariants start = invariants(init[0], mu);
  Series inv{"invariants", {"t", "I0", "I1", "I2", "drift_I0", "drift_I1", "drift_I2", "boundary_ratio"}, {}};
  double worst[3] = {0.0, 0.0, 0.0};
  double worst_boundary = 0.0;
  SpectralField last = init[0];
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& f) {
    const Invariants now = invariants(f[0], mu);
    const double d[3] = {relative_drift(now.i0, start.i0), relative_drift(now.i1, start.i1),
                         relative_drift(now.i2, start.i2)};
    for (int i = 0; i < 3; ++i) worst[i] = std::max(worst[i], d[i]);
    const double b = boundary_ratio(f[0]);
    worst_boundary = std::max(worst_boundary, b);
    inv.add({t, now.i0, now.i1, now.i2, d[0], d[1], d[2], b});
    last = f[0];
    return true;
  });
  rep.series.push_back(inv);
  rep.verdicts.push_back(at_most("drift_I0", worst[0], cfg, "tolerances.conservation"));
  rep.verdicts.push_back(at_most("drift_I1", worst[1], cfg, "tolerances.conservation"));
  rep.verdicts.push_back(at_most("drift_I2", worst[2], cfg, "tolerances.conservation"));
  rep.scalar("boundary_ratio_max", worst_boundary);
  rep.plots.push_back({"drift", "invariants", "t", {"drift_I0", "drift_I1", "drift_I2"}, false, true,
                       "Relative drift of the mKdV invariants", ""});

  if (is_soliton) {
    rep.verdicts.push_back(at_most("boundary", worst_boundary, cfg, "tolerances.boundary",
                                   "max boundary amplitude / peak over the run"));
    if (mu != 1) {
      rep.warnings.push_back("soliton profile with mu = -1 is not a travelling wave; fidelity skipped");
    } else {
      const double k = cfg.real("initial.width");
      const double t_end = static_cast<double>(std::llround(spec.t_end / spec.dt)) * spec.dt;
      const double err = max_abs_diff(last, translate(init[0], k * k * t_end));
      rep.verdicts.push_back(at_most("soliton_fidelity", err, cfg, "tolerances.fidelity",
                                     "max-norm error against the exact translate at t = " + fmt(t_end)));

      // Order check: errors at order_dt and order_dt / 2.
      const double coarse = cfg.real("analysis.order_dt");
      double errors[2] = {0.0, 0.0};
      double i2_drift[2] = {0.0, 0.0};
      for (int r = 0; r < 2; ++r) {
        EvolutionSpec s = spec;
        s.dt = coarse / (1 << r);
        s.record_every = static_cast<int>(std::llround(spec.t_end / s.dt));
        SpectralField end = init[0];
        integrate(s, init, [&](double, const std::vector<SpectralField>& f) {
          end = f[0];
          return true;
        });
        errors[r] = max_abs_diff(end, translate(init[0], k * k * spec.t_end));
        i2_drift[r] = relative_drift(invariants(end, mu).i2, start.i2);
      }
      const double ratio = errors[0] / errors[1];
      rep.scalar("order_error_coarse", errors[0]);
      rep.scalar("order_error_fine", errors[1]);
      rep.scalar("order_I2_drift_coarse", i2_drift[0]);
      rep.scalar("order_I2_drift_fine", i2_drift[1]);
      rep.verdicts.push_back(within("order_ratio", ratio, cfg, "tolerances.order_lo", "tolerances.order_hi",
                                    "error(dt=" + fmt(coarse) + ") / error(dt=" + fmt(coarse / 2) + ")"));
    }
  } else {
    rep.warnings.push_back("non-soliton data: fidelity and order checks skipped, boundary ratio is diagnostic");
  }
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport run_sigma_scaling(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<MKdV>(spec.equation)) throw ConfigError("sigma-scaling needs evolution.equation = mkdv");
  const int mu = std::get<MKdV>(spec.equation).mu;
  if (mu != -1) rep.warnings.push_back("sigma-scaling is specified for the defocusing case mu = -1");
  const auto sigmas = cfg.reals("analysis.sigma");
  if (sigmas.size() < 3) throw ConfigError("analysis.sigma needs at least 3 values for the drift fit");
  const auto init = initial_data(cfg, grid);
  const SpectralField& u0 = init[0];

  const double sigma0 = cfg.real("analysis.sigma0");
  const double data = std::pow(hsigma_norm(u0, sigma0, 2.0), 2);
  const double window = cfg.real("analysis.window") > 0.0
                            ? cfg.real("analysis.window")
                            : lifespan_T0(0.0, data, cfg.real("analysis.c0"), cfg.real("analysis.d"));
  spec.t_end = window;
  const long steps = std::max(1L, static_cast<long>(std::ceil(window / spec.dt - 1e-9)));
  spec.t_end = static_cast<double>(steps) * spec.dt;
  rep.scalar("window", spec.t_end);
  rep.scalar("data_norm_sq_H_sigma0_2", data);

  const std::size_t ns = sigmas.size();
  std::vector<double> A0(ns), D(ns, -HUGE_VAL);
  for (std::size_t i = 0; i < ns; ++i) A0[i] = functional_A(u0, sigmas[i], mu).total;

  std::vector<std::string> cols{"t"};
  for (double s : sigmas) cols.push_back("drift_" + sigma_label(s));
  Series drift{"drift", cols, {}};

  const auto rate_sigmas = cfg.reals("analysis.rate_sigma");
  std::vector<RateProbe> probes(rate_sigmas.size(), RateProbe(cfg.integer("analysis.rate_stride"), spec.dt));
  const int record_every = spec.record_every;
  spec.record_every = 1;
  long n = 0;
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& f) {
    if (n % record_every == 0 || n == steps) {
      std::vector<double> row(ns + 1);
      row[0] = t;
#pragma omp parallel for schedule(static)
      for (long i = 0; i < static_cast<long>(ns); ++i) {
        const auto idx = static_cast<std::size_t>(i);
        row[idx + 1] = functional_A(f[0], sigmas[idx], mu).total - A0[idx];
      }
      for (std::size_t i = 0; i < ns; ++i) D[i] = std::max(D[i], row[i + 1]);
      drift.add(std::move(row));
    }
    for (std::size_t r = 0; r < probes.size(); ++r) {
      probes[r].observe(
          n, [&] { return functional_A(f[0], rate_sigmas[r], mu).total; },
          [&] { return energy_rate_A(f[0], rate_sigmas[r], mu).total; });
    }
    ++n;
    return true;
  });
  rep.series.push_back(drift);

  Series dsig{"drift_vs_sigma", {"sigma", "D", "A0", "C_hat"}, {}};
  std::vector<double> xs, ys, chat;
  for (std::size_t i = 0; i < ns; ++i) {
    const double a = A0[i];
    const double c = D[i] / (sigmas[i] * sigmas[i] * a * a * (1.0 + a + a * a));
    dsig.add({sigmas[i], D[i], a, c});
    if (sigmas[i] > 0.0 && D[i] > 0.0) {
      xs.push_back(sigmas[i]);
      ys.push_back(D[i]);
      chat.push_back(c);
    } else {
      rep.warnings.push_back("D(" + sigma_label(sigmas[i]) + ") = " + fmt(D[i]) +
                             " is at the measurement floor; excluded from the fit (inconclusive)");
    }
  }
  rep.series.push_back(dsig);
  if (xs.size() >= 3) {
    const Fit fit = fit_loglog("drift_exponent", xs, ys);
    rep.fits.push_back(fit);
    rep.verdicts.push_back(within("drift_exponent", fit.slope, cfg, "tolerances.slope_lo", "tolerances.slope_hi",
                                  "slope of log D(sigma) vs log sigma"));
    rep.verdicts.push_back(at_least("drift_fit_r2", fit.r2, cfg, "tolerances.r2_min"));
    const auto [lo, hi] = std::minmax_element(chat.begin(), chat.end());
    rep.scalar("C_hat_min", *lo);
    rep.scalar("C_hat_max", *hi);
    rep.plots.push_back({"drift_vs_sigma", "drift_vs_sigma", "sigma", {"D"}, true, true,
                         "A_sigma drift over the lifespan window", "fitted slope " + fmt(fit.slope)});
  } else {
    rep.verdicts.push_back(Verdict{"drift_exponent", false, NAN, cfg.real("tolerances.slope_lo"),
                                   cfg.real("tolerances.slope_hi"), "tolerances.slope_lo,tolerances.slope_hi",
                                   "fewer than 3 conclusive sigma values"});
  }

  for (std::size_t r = 0; r < probes.size(); ++r) {
    Series s{"energy_rate_" + sigma_label(rate_sigmas[r]), {"t", "finite_difference", "rate"}, {}};
    for (const auto& p : probes[r].samples()) s.add({p[0], p[1], p[2]});
    rep.series.push_back(s);
    if (probes[r].samples().empty()) {
      rep.warnings.push_back("energy-rate probe at " + sigma_label(rate_sigmas[r]) + " collected no samples");
      continue;
    }
    rep.verdicts.push_back(at_most("energy_rate_identity_" + sigma_label(rate_sigmas[r]), probes[r].residual(), cfg,
                                   "tolerances.rate", "max |FD - rate| / max |rate|"));
  }

  // Small-sigma scaling of F on a smooth Gaussian.
  const double L = grid.length();
  const auto gauss = dealias(sample(grid, [&](double x) {
    const double z = std::remainder(x - 0.5 * L, L);
    return std::exp(-0.5 * z * z);
  }));
  const auto fs = cfg.reals("analysis.f_sigma");
  Series fser{"F_norm", {"sigma", "norm"}, {}};
  std::vector<double> fn;
  for (double s : fs) {
    fn.push_back(hsigma_norm(operator_F(gauss, s, mu), 0.0, 0.0));
    fser.add({s, fn.back()});
  }
  rep.series.push_back(fser);
  const Fit ffit = fit_loglog("F_exponent", fs, fn);
  rep.fits.push_back(ffit);
  rep.verdicts.push_back(within("F_exponent", ffit.slope, cfg, "tolerances.f_slope_lo", "tolerances.f_slope_hi"));

  // G on a high-frequency packet with the configured damping.
  const auto a = damping_from(cfg, "damping", grid);
  if (a.is_constant()) rep.warnings.push_back("constant damping: G vanishes identically, G exponent undefined");
  const auto packet = dealias(sample(grid, [&](double x) {
    return std::cos(kPacketFrequency * x) / std::cosh(kPacketWidth * std::remainder(x - 0.5 * L, L));
  }));
  const auto gs = cfg.reals("analysis.g_sigma");
  Series gser{"G_norm", {"sigma", "norm"}, {}};
  std::vector<double> gn;
  for (double s : gs) {
    gn.push_back(hsigma_norm(operator_G(packet, a, s), 0.0, 0.0));
    gser.add({s, gn.back()});
  }
  rep.series.push_back(gser);
  if (!a.is_constant()) {
    const Fit gfit = fit_loglog("G_exponent", gs, gn);
    rep.fits.push_back(gfit);
    rep.verdicts.push_back(within("G_exponent", gfit.slope, cfg, "tolerances.g_slope_lo", "tolerances.g_slope_hi",
                                  "packet cos(8x) sech(0.25(x - L/2))"));
    rep.plots.push_back({"G_norm", "G_norm", "sigma", {"norm"}, true, true, "||G(W)|| against sigma",
                         "fitted slope " + fmt(gfit.slope)});
  }
  rep.plots.push_back({"F_norm", "F_norm", "sigma", {"norm"}, true, true, "||F(W)|| against sigma",
                       "fitted slope " + fmt(ffit.slope)});
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport run_damping_decay(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<MKdVm>(spec.equation)) throw ConfigError("damping needs evolution.equation = mkdvm");
  const MKdVm eq = std::get<MKdVm>(spec.equation);
  const auto init = initial_data(cfg, grid);
  const double lambda = eq.damping.lambda();
  const double m0 = functional_M(init[0], 0.0);

  const auto rate_sigmas = cfg.reals("analysis.rate_sigma");
  std::vector<RateProbe> probes(rate_sigmas.size(), RateProbe(cfg.integer("analysis.rate_stride"), spec.dt));
  Series decay{"decay", {"t", "L2_sq", "envelope", "ratio"}, {}};
  double worst_excess = -HUGE_VAL;
  const int record_every = spec.record_every;
  spec.record_every = 1;
  long n = 0;
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& f) {
    if (n % record_every == 0) {
      const double m = functional_M(f[0], 0.0);
      const double env = std::exp(-2.0 * lambda * t) * m0;
      const double ratio = env > 0.0 ? m / env : 0.0;
      worst_excess = std::max(worst_excess, ratio - 1.0);
      decay.add({t, m, env, ratio});
    }
    for (std::size_t r = 0; r < probes.size(); ++r) {
      probes[r].observe(
          n, [&] { return functional_M(f[0], rate_sigmas[r]); },
          [&] { return mass_rate_M(f[0], eq.damping, rate_sigmas[r], eq.mu, eq.m).lhs_rate; });
    }
    ++n;
    return true;
  });
  rep.series.push_back(decay);
  rep.verdicts.push_back(at_most("decay_inequality", worst_excess, cfg, "tolerances.decay",
                                 "max ||v(t)||^2 / (e^{-2 lambda t} ||v0||^2) - 1"));
  if (!decay.rows.empty()) rep.scalar("final_ratio", decay.rows.back()[3]);
  rep.plots.push_back({"decay", "decay", "t", {"L2_sq", "envelope"}, false, true,
                       "L2 energy against the Gronwall envelope", "lambda = " + fmt(lambda)});

  for (std::size_t r = 0; r < probes.size(); ++r) {
    Series s{"mass_rate_" + sigma_label(rate_sigmas[r]), {"t", "finite_difference", "rate"}, {}};
    for (const auto& p : probes[r].samples()) s.add({p[0], p[1], p[2]});
    rep.series.push_back(s);
    rep.verdicts.push_back(at_most("mass_rate_identity_" + sigma_label(rate_sigmas[r]), probes[r].residual(), cfg,
                                   "tolerances.rate", "max |FD - rate| / max |rate|"));
  }

  // Constant-damping companion: the Gronwall bound is an equality.
  EvolutionSpec companion = spec;
  companion.equation = MKdVm{eq.m, eq.mu, DampingProfile::constant(lambda)};
  companion.record_every = record_every;
  Series eqs{"constant_damping", {"t", "L2_sq", "exact"}, {}};
  double worst_eq = 0.0;
  integrate(companion, init, [&](double t, const std::vector<SpectralField>& f) {
    const double m = functional_M(f[0], 0.0);
    const double exact = std::exp(-2.0 * lambda * t) * m0;
    if (exact > 0.0) worst_eq = std::max(worst_eq, std::abs(m - exact) / exact);
    eqs.add({t, m, exact});
    return true;
  });
  rep.series.push_back(eqs);
  rep.verdicts.push_back(at_most("constant_damping_equality", worst_eq, cfg, "tolerances.equality",
                                 "max relative gap to e^{-2 lambda t} ||v0||^2"));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// State-dependent pieces of the windowed iteration.
struct IterationModel {
  std::function<double(const std::vector<SpectralField>&, double)> mass;        // M_sigma or N_sigma
  std::function<double(const std::vector<SpectralField>&, double)> decay_norm;  // ||.||_{H^{sigma/2,0}}
  std::string mass_name;
};

struct IterationInputs {
  double lambda;
  double sigma0;
  double theta;
  double a_norm;
  double mass0;  // M_{sigma0}(0) or N_{sigma0}(0)
  double T0;
  double C_hat;
};

void run_windows(const ScenarioConfig& cfg, EvolutionSpec spec, const std::vector<SpectralField>& init,
                 const IterationModel& model, const IterationInputs& in, ExperimentReport& rep) {
  const long steps = std::max(1L, static_cast<long>(std::ceil(in.T0 / cfg.real("evolution.dt") - 1e-9)));
  const int per_window = cfg.integer("analysis.records_per_window");
  const long steps_rounded = ((steps + per_window - 1) / per_window) * per_window;
  spec.dt = in.T0 / static_cast<double>(steps_rounded);
  spec.record_every = static_cast<int>(steps_rounded / per_window);
  rep.scalar("T0", in.T0);
  rep.scalar("dt", spec.dt);
  rep.scalar("a_norm", in.a_norm);
  rep.scalar(model.mass_name + "_sigma0_initial", in.mass0);
  rep.scalar("theta", in.theta);
  rep.scalar("lambda", in.lambda);
  rep.scalar("C_hat", in.C_hat);

  // C1: calibrated on the first window at sigma0, or fixed.
  double C1 = cfg.real("analysis.c1");
  if (cfg.text("analysis.c1_policy") == "empirical") {
    EvolutionSpec calib = spec;
    calib.t_end = in.T0;
    calib.record_every = static_cast<int>(steps_rounded);
    double end_mass = in.mass0;
    integrate(calib, init, [&](double t, const std::vector<SpectralField>& f) {
      if (t > 0.0) end_mass = model.mass(f, in.sigma0);
      return true;
    });
    const double residual = end_mass - std::exp(-2.0 * in.lambda * in.T0) * in.mass0;
    const double scale = (std::pow(in.sigma0, in.theta) * in.mass0 + in.sigma0 * in.a_norm) * in.mass0;
    rep.scalar("calibration_residual", residual);
    double raw = residual / scale;
    if (!(residual > 0.0)) {
      rep.warnings.push_back("calibration window drift " + fmt(residual) + " is not positive; C1 floor 1e-6 used");
      raw = 1e-6;
    }
    C1 = raw * cfg.real("analysis.c1_safety");
  }
  const SigmaChoice choice = sigma_choice(in.sigma0, in.lambda, in.T0, C1, in.a_norm, in.mass0, in.theta);
  const double sigma = choice.sigma;
  rep.scalar("C1", C1);
  rep.scalar("sigma", sigma);
  rep.scalar("sigma_branch", choice.branch);

  const int k_max = cfg.integer("analysis.k_max");
  if (k_max == 0) return;
  spec.t_end = static_cast<double>(k_max) * in.T0;

  Series windows{"windows", {"k", "t", model.mass_name, "residual", "bound"}, {}};
  Series decay{"decay", {"t", "norm_half_sigma", "envelope", model.mass_name, "L2"}, {}};
  std::vector<double> window_mass;
  double worst_decay = -HUGE_VAL;
  double worst_interp = -HUGE_VAL;
  long record = 0;
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& f) {
    const double ms = model.mass(f, sigma);
    const double norm = model.decay_norm(f, sigma);
    const double env = in.C_hat * std::exp(-0.5 * in.lambda * t);
    worst_decay = std::max(worst_decay, norm / env - 1.0);
    for (const auto& c : f) {
      const auto chk = interpolation_check(c, sigma);
      worst_interp = std::max(worst_interp, -chk.margin / std::max(1.0, chk.rhs));
    }
    decay.add({t, norm, env, ms, std::sqrt(model.mass(f, 0.0))});
    if (record % per_window == 0) window_mass.push_back(ms);
    ++record;
    return true;
  });

  double worst_mass = -HUGE_VAL;
  double worst_resid = -HUGE_VAL;
  const double q = std::exp(-2.0 * in.lambda * in.T0);
  for (std::size_t k = 0; k < window_mass.size(); ++k) {
    worst_mass = std::max(worst_mass, window_mass[k] / in.mass0 - 1.0);
    double residual = NAN, bound = NAN;
    if (k + 1 < window_mass.size()) {
      const double m = window_mass[k];
      residual = window_mass[k + 1] - q * m;
      bound = C1 * (std::pow(sigma, in.theta) * m + sigma * in.a_norm) * m;
      worst_resid = std::max(worst_resid, (residual - bound) / bound);
    }
    windows.add({static_cast<double>(k), static_cast<double>(k) * in.T0, window_mass[k], residual, bound});
  }
  rep.series.push_back(windows);
  rep.series.push_back(decay);
  rep.verdicts.push_back(at_most("window_bound", worst_mass, cfg, "tolerances.envelope",
                                 "max_k " + model.mass_name + "_sigma(k T0) / " + model.mass_name + "_sigma0(0) - 1"));
  rep.verdicts.push_back(at_most("exponential_decay", worst_decay, cfg, "tolerances.envelope",
                                 "max_t ||.||_{H^{sigma/2,0}} / (C e^{-lambda t/2}) - 1"));
  rep.verdicts.push_back(at_most("almost_conservation", worst_resid, cfg, "tolerances.envelope",
                                 "max_k (residual_k - bound_k) / bound_k"));
  rep.verdicts.push_back(at_most("interpolation", std::max(0.0, worst_interp), cfg, "tolerances.interpolation"));
  rep.plots.push_back({"decay", "decay", "t", {"norm_half_sigma", "envelope"}, false, true,
                       "H^{sigma/2,0} norm against C e^{-lambda t/2}", "sigma = " + fmt(sigma)});
  rep.plots.push_back({"windows", "windows", "t", {model.mass_name}, false, true,
                       model.mass_name + "_sigma at window starts", ""});
}

}  // namespace

ExperimentReport run_global_iteration(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  const EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<MKdVm>(spec.equation)) throw ConfigError("iterate needs evolution.equation = mkdvm");
  const MKdVm eq = std::get<MKdVm>(spec.equation);
  const auto init = initial_data(cfg, grid);

  IterationInputs in{};
  in.lambda = eq.damping.lambda();
  in.sigma0 = cfg.real("analysis.sigma0");
  in.theta = cfg.real("analysis.theta") > 0.0 ? cfg.real("analysis.theta") : theta_max(eq.m).value();
  in.a_norm = damping_A_norm(eq.damping, in.sigma0);
  in.mass0 = functional_M(init[0], in.sigma0);
  in.T0 = lifespan_T0(in.a_norm, in.mass0, cfg.real("analysis.c0"), cfg.real("analysis.d"));
  in.C_hat = std::sqrt(hsigma_norm(init[0], 0.0, 0.0) * hsigma_norm(init[0], in.sigma0, 0.0));

  IterationModel model;
  model.mass = [](const std::vector<SpectralField>& f, double s) { return functional_M(f[0], s); };
  model.decay_norm = [](const std::vector<SpectralField>& f, double s) { return hsigma_norm(f[0], 0.5 * s, 0.0); };
  model.mass_name = "M";
  run_windows(cfg, spec, init, model, in, rep);
  return rep;
}

ExperimentReport run_coupled(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  const EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<Coupled>(spec.equation)) throw ConfigError("coupled needs evolution.equation = coupled");
  const Coupled eq = std::get<Coupled>(spec.equation);
  const auto init = initial_data(cfg, grid);

  IterationInputs in{};
  in.lambda = std::min(eq.damping1.lambda(), eq.damping2.lambda());
  in.sigma0 = cfg.real("analysis.sigma0");
  in.theta = cfg.real("analysis.theta") > 0.0 ? cfg.real("analysis.theta") : 0.25;
  const double an1 = damping_A_norm(eq.damping1, in.sigma0);
  const double an2 = damping_A_norm(eq.damping2, in.sigma0);
  in.a_norm = std::max(an1, an2);
  in.mass0 = functional_N(init[0], init[1], in.sigma0);
  in.T0 = lifespan_T0_coupled(an1, an2, hsigma_norm(init[0], in.sigma0, 0.0), hsigma_norm(init[1], in.sigma0, 0.0),
                              cfg.real("analysis.c0"), cfg.real("analysis.d"));
  in.C_hat = std::sqrt(std::sqrt(functional_N(init[0], init[1], 0.0)) * std::sqrt(in.mass0));
  rep.scalar("lambda0", in.lambda);

  IterationModel model;
  model.mass = [](const std::vector<SpectralField>& f, double s) { return functional_N(f[0], f[1], s); };
  model.decay_norm = [](const std::vector<SpectralField>& f, double s) {
    return std::max(hsigma_norm(f[0], 0.5 * s, 0.0), hsigma_norm(f[1], 0.5 * s, 0.0));
  };
  model.mass_name = "N";
  run_windows(cfg, spec, init, model, in, rep);

  // w2 = 0: the first component follows the damped linear Airy flow.
  EvolutionSpec deg = spec;
  deg.t_end = cfg.real("analysis.degenerate_t_end");
  deg.record_every = std::max(1, static_cast<int>(std::llround(0.1 / deg.dt)));
  const std::vector<SpectralField> deg_init{init[0], zero_field(grid)};
  EvolutionSpec lin = deg;
  lin.equation = MKdVm{3, eq.mu, eq.damping1};
  lin.nonlinear = false;
  std::vector<SpectralField> coupled_states, linear_states;
  integrate(deg, deg_init, [&](double, const std::vector<SpectralField>& f) {
    coupled_states.push_back(f[0]);
    return true;
  });
  integrate(lin, {init[0]}, [&](double, const std::vector<SpectralField>& f) {
    linear_states.push_back(f[0]);
    return true;
  });
  double mismatch = 0.0;
  double n_gap = 0.0;
  const double sigma = rep.scalar("sigma");
  for (std::size_t i = 0; i < std::min(coupled_states.size(), linear_states.size()); ++i) {
    const double peak = std::max(linear_states[i].max_abs(), 1e-300);
    mismatch = std::max(mismatch, max_abs_diff(coupled_states[i], linear_states[i]) / peak);
    const double nn = functional_N(coupled_states[i], zero_field(grid), sigma);
    const double mm = functional_M(linear_states[i], sigma);
    n_gap = std::max(n_gap, std::abs(nn - mm) / std::max(mm, 1e-300));
  }
  rep.verdicts.push_back(at_most("degenerate_reduction", mismatch, cfg, "tolerances.degenerate",
                                 "w2 = 0: max |w1 - v| / max |v| against damped linear m = 3 flow"));
  rep.verdicts.push_back(at_most("degenerate_N_equals_M", n_gap, cfg, "tolerances.degenerate"));
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport run_radius_tracking(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const Grid grid = make_grid(cfg);
  const EvolutionSpec spec = evolution_from(cfg, grid);
  if (!std::holds_alternative<MKdV>(spec.equation)) throw ConfigError("radius needs evolution.equation = mkdv");
  const auto init = initial_data(cfg, grid);
  const double floor_rel = cfg.real("analysis.floor_rel");
  const double sigma0 = cfg.real("analysis.sigma0");

  Series track{"radius", {"t", "sigma_hat", "envelope", "fit_residual", "modes"}, {}};
  std::vector<std::pair<double, RadiusFit>> fits;
  integrate(spec, init, [&](double t, const std::vector<SpectralField>& f) {
    fits.emplace_back(t, radius_estimate(f[0], floor_rel));
    return true;
  });

  double t1 = 0.0, c = 0.0;
  for (const auto& [t, fit] : fits) {
    if (t > 0.0) {
      t1 = t;
      c = fit.sigma_hat * std::sqrt(t);
      break;
    }
  }
  rep.scalar("sigma_hat_initial", fits.front().second.sigma_hat);
  rep.scalar("calibration_time", t1);
  rep.scalar("envelope_c", c);

  double shortfall = -HUGE_VAL;
  int flagged = 0;
  for (const auto& [t, fit] : fits) {
    const double env = t > 0.0 ? std::min(sigma0, c / std::sqrt(t)) : sigma0;
    track.add({t, fit.sigma_hat, env, fit.residual, static_cast<double>(fit.modes_used)});
    if (fit.super_exponential || fit.positive_slope) ++flagged;
    if (t > t1) shortfall = std::max(shortfall, 1.0 - fit.sigma_hat / env);
  }
  if (flagged > 0) rep.warnings.push_back(std::to_string(flagged) + " radius fits flagged (super-exponential or positive slope)");
  rep.series.push_back(track);
  if (fits.size() < 3) {
    rep.warnings.push_back("fewer than two snapshots after calibration; envelope check vacuous");
    shortfall = 0.0;
  }
  rep.verdicts.push_back(at_most("radius_envelope", shortfall, cfg, "tolerances.radius",
                                 "max_t 1 - sigma_hat(t) / min{sigma0, c t^{-1/2}} after calibration"));
  rep.plots.push_back({"radius", "radius", "t", {"sigma_hat", "envelope"}, false, false,
                       "Estimated analyticity radius", "c = " + fmt(c)});

  // Soliton control: a travelling wave keeps its radius pi / (2k).
  const double k = 1.0;
  EvolutionSpec ctrl = spec;
  ctrl.equation = MKdV{1};
  ctrl.t_end = cfg.real("analysis.control_t_end");
  const auto sol = dealias(soliton(grid, k, 0.5 * grid.length()).field);
  const double target = std::numbers::pi / (2.0 * k);
  Series control{"soliton_control", {"t", "sigma_hat"}, {}};
  double deviation = 0.0;
  integrate(ctrl, {sol}, [&](double t, const std::vector<SpectralField>& f) {
    const auto fit = radius_estimate(f[0], floor_rel);
    control.add({t, fit.sigma_hat});
    deviation = std::max(deviation, std::abs(fit.sigma_hat - target) / target);
    return true;
  });
  rep.series.push_back(control);
  rep.verdicts.push_back(at_most("soliton_control", deviation, cfg, "tolerances.control",
                                 "max |sigma_hat - pi/2| / (pi/2) for the k = 1 soliton"));
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport run_inequality_suite(const ScenarioConfig& cfg) {
  ExperimentReport rep;
  rep.scenario = cfg.id();
  const auto manifest = load_constants(default_constants_path());
  rep.scalar("triple_cosh_K", manifest.triple_cosh_K);

  const auto scan = scan_triple_cosh(manifest.triple_cosh_K, cfg.integer("analysis.lattice"));
  rep.scalar("lattice_points", static_cast<double>(scan.evaluated));
  rep.scalar("lattice_supremum", scan.supremum);
  rep.verdicts.push_back(at_most("triple_cosh_lattice", static_cast<double>(scan.violations), cfg,
                                 "tolerances.violations",
                                 "violations at K = " + fmt(manifest.triple_cosh_K) + ", supremum " + fmt(scan.supremum)));

  PropertySuiteOptions opt;
  opt.samples = static_cast<std::uint64_t>(cfg.integer("analysis.samples"));
  opt.seed = static_cast<std::uint64_t>(cfg.integer("scenario.seed"));
  opt.triple_cosh_K = manifest.triple_cosh_K;
  const auto results = parallel::run_property_suite(opt);
  Series props{"properties", {"index", "samples", "violations", "worst_relative_margin"}, {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    props.add({static_cast<double>(i), static_cast<double>(r.samples), static_cast<double>(r.violations),
               r.worst_relative_margin});
    rep.verdicts.push_back(at_most("property_" + r.name, static_cast<double>(r.violations), cfg,
                                   "tolerances.violations",
                                   std::to_string(r.samples) + " samples, worst margin " + fmt(r.worst_relative_margin)));
  }
  rep.series.push_back(props);
  return rep;
}

// ---------------------------------------------------------------------------

ExperimentReport run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::string id = cfg.id();
  ExperimentReport rep;
  if (id == "conservation") {
    rep = run_conservation(cfg);
  } else if (id == "sigma-scaling") {
    rep = run_sigma_scaling(cfg);
  } else if (id == "damping") {
    rep = run_damping_decay(cfg);
  } else if (id == "iterate") {
    rep = run_global_iteration(cfg);
  } else if (id == "radius") {
    rep = run_radius_tracking(cfg);
  } else if (id == "coupled") {
    rep = run_coupled(cfg);
  } else if (id == "inequalities") {
    rep = run_inequality_suite(cfg);
  } else {
    throw ConfigError("unknown scenario '" + id + "'");
  }
  rep.config = cfg;
  rep.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace gevreyflow
