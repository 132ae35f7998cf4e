#include "gevreyflow/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "gevreyflow/dynamics/damping.hpp"
#include "gevreyflow/dynamics/evolution.hpp"
#include "gevreyflow/error.hpp"
#include "gevreyflow/spectral/grid.hpp"

namespace gevreyflow {

namespace {

using K = ValueKind;

const std::vector<KeySpec> kSchema = {
    {"scenario.id", K::Text, "conservation", "scenario to run"},
    {"scenario.seed", K::Integer, "1", "random seed (property suites)"},

    {"grid.L", K::Real, "64", "period length"},
    {"grid.N", K::Integer, "512", "number of nodes"},

    {"evolution.equation", K::Text, "mkdv", "mkdv | mkdvm | coupled"},
    {"evolution.mu", K::Integer, "1", "sign of the cubic term"},
    {"evolution.m", K::Integer, "5", "dispersion order of mkdvm"},
    {"evolution.alpha", K::Real, "0.5", "dispersion ratio of the coupled system"},
    {"evolution.dt", K::Real, "2e-4", "time step"},
    {"evolution.t_end", K::Real, "5", "final time"},
    {"evolution.record_every", K::Integer, "250", "steps between recorded states"},

    {"damping.form", K::Text, "constant", "constant | raised-cosine"},
    {"damping.lambda", K::Real, "1", "damping floor"},
    {"damping.epsilon", K::Real, "0", "raised-cosine amplitude"},
    {"damping2.form", K::Text, "constant", "second component damping form"},
    {"damping2.lambda", K::Real, "1", "second component damping floor"},
    {"damping2.epsilon", K::Real, "0", "second component raised-cosine amplitude"},

    {"initial.profile", K::Text, "soliton", "soliton | sech | gaussian | packet | zero"},
    {"initial.amplitude", K::Real, "1", "peak amplitude (soliton: ignored)"},
    {"initial.width", K::Real, "1", "inverse width k (soliton parameter)"},
    {"initial.shift", K::Real, "0", "centre offset from L/2"},
    {"initial.frequency", K::Real, "0", "carrier frequency of the packet profile"},
    {"initial.second", K::Real, "1", "coupled: w2(0) = second * w1(0)"},

    {"analysis.sigma", K::RealList, "0.05,0.1,0.2,0.4", "sigma sweep (ascending)"},
    {"analysis.sigma0", K::Real, "1", "initial analyticity radius"},
    {"analysis.theta", K::Real, "0", "almost-conservation exponent (0: theta_max(m))"},
    {"analysis.c0", K::Real, "1", "lifespan constant c0"},
    {"analysis.d", K::Real, "2", "lifespan exponent d"},
    {"analysis.c1_policy", K::Text, "empirical", "empirical | fixed"},
    {"analysis.c1", K::Real, "1", "C1 when c1_policy = fixed"},
    {"analysis.c1_safety", K::Real, "2", "safety factor on the calibrated C1"},
    {"analysis.k_max", K::Integer, "20", "number of iteration windows"},
    {"analysis.records_per_window", K::Integer, "10", "decay samples per window"},
    {"analysis.floor_rel", K::Real, "1e-8", "radius-fit noise floor"},
    {"analysis.window", K::Real, "0", "drift window (0: lifespan T0)"},
    {"analysis.order_dt", K::Real, "0.002", "coarse step of the order check"},
    {"analysis.rate_sigma", K::RealList, "0,0.2", "sigmas of the rate-identity checks"},
    {"analysis.rate_stride", K::Integer, "250", "steps between rate-identity samples"},
    {"analysis.f_sigma", K::RealList, "1e-3,3e-3,1e-2,3e-2,1e-1", "sigmas of the F scaling fit"},
    {"analysis.g_sigma", K::RealList, "0.5,0.7071,1,1.4142,2", "sigmas of the G scaling fit"},
    {"analysis.control_t_end", K::Real, "2", "duration of the soliton control run"},
    {"analysis.degenerate_t_end", K::Real, "0.5", "duration of the w2 = 0 comparison run"},
    {"analysis.samples", K::Integer, "1000000", "property samples per inequality"},
    {"analysis.lattice", K::Integer, "50", "triple-cosh lattice points per axis"},

    {"tolerances.conservation", K::Real, "1e-6", "relative invariant drift"},
    {"tolerances.fidelity", K::Real, "1e-6", "max-norm soliton error"},
    {"tolerances.boundary", K::Real, "1e-10", "boundary amplitude / peak for soliton runs"},
    {"tolerances.order_lo", K::Real, "10", "lower bound of the dt-halving error ratio"},
    {"tolerances.order_hi", K::Real, "24", "upper bound of the dt-halving error ratio"},
    {"tolerances.slope_lo", K::Real, "1.8", "lower bound of the drift exponent"},
    {"tolerances.slope_hi", K::Real, "2.2", "upper bound of the drift exponent"},
    {"tolerances.r2_min", K::Real, "0.98", "minimum r^2 of the drift fit"},
    {"tolerances.f_slope_lo", K::Real, "1.9", "lower bound of the F exponent"},
    {"tolerances.f_slope_hi", K::Real, "2.1", "upper bound of the F exponent"},
    {"tolerances.g_slope_lo", K::Real, "0.9", "lower bound of the G exponent"},
    {"tolerances.g_slope_hi", K::Real, "1.1", "upper bound of the G exponent"},
    {"tolerances.rate", K::Real, "1e-5", "rate-identity residual / max|rate|"},
    {"tolerances.decay", K::Real, "1e-3", "relative slack of decay inequalities"},
    {"tolerances.equality", K::Real, "1e-8", "constant-damping equality"},
    {"tolerances.envelope", K::Real, "1e-3", "relative slack of iteration envelopes"},
    {"tolerances.radius", K::Real, "1e-2", "relative slack of the radius envelope"},
    {"tolerances.control", K::Real, "0.03", "soliton radius relative deviation"},
    {"tolerances.degenerate", K::Real, "1e-10", "w2 = 0 reduction mismatch"},
    {"tolerances.interpolation", K::Real, "1e-12", "interpolation inequality slack"},
    {"tolerances.violations", K::Integer, "0", "allowed inequality violations"},

    {"output.plots", K::Boolean, "true", "write plots/*.svg"},
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, Overrides> kScenarioDefaults = {
    {"conservation",
     {{"grid.N", "1024"}, {"analysis.order_dt", "0.001"}, {"evolution.equation", "mkdv"}, {"evolution.mu", "1"}, {"evolution.t_end", "5"},
      {"evolution.record_every", "250"}, {"initial.profile", "soliton"}, {"initial.width", "1"}}},
    {"sigma-scaling",
     {{"evolution.equation", "mkdv"}, {"evolution.mu", "-1"}, {"evolution.record_every", "25"},
      {"initial.profile", "sech"}, {"initial.amplitude", "0.8"}, {"initial.width", "0.5"},
      {"analysis.sigma0", "0.4"}, {"analysis.sigma", "0.05,0.1,0.2,0.4"}, {"analysis.rate_sigma", "0.2"},
      {"analysis.rate_stride", "20"}, {"damping.form", "raised-cosine"}, {"damping.epsilon", "0.5"}}},
    {"damping",
     {{"evolution.equation", "mkdvm"}, {"evolution.mu", "-1"}, {"evolution.m", "5"}, {"evolution.t_end", "3"},
      {"evolution.record_every", "50"}, {"damping.form", "raised-cosine"}, {"damping.lambda", "1"},
      {"damping.epsilon", "0.5"}, {"initial.profile", "sech"}, {"initial.amplitude", "0.7071067811865476"},
      {"analysis.rate_sigma", "0,0.5"}, {"analysis.rate_stride", "250"}}},
    {"iterate",
     {{"evolution.equation", "mkdvm"}, {"evolution.mu", "-1"}, {"evolution.m", "5"},
      {"damping.form", "raised-cosine"}, {"damping.lambda", "1"}, {"damping.epsilon", "0.25"},
      {"initial.profile", "sech"}, {"initial.amplitude", "0.7071067811865476"}, {"analysis.sigma0", "1"},
      {"analysis.k_max", "20"}}},
    {"radius",
     {{"evolution.equation", "mkdv"}, {"evolution.mu", "-1"}, {"evolution.t_end", "10"},
      {"evolution.record_every", "2500"}, {"initial.profile", "sech"}, {"initial.amplitude", "1"},
      {"initial.width", "1"}, {"analysis.sigma0", "1.5707963267948966"}}},
    {"coupled",
     {{"evolution.equation", "coupled"}, {"evolution.mu", "-1"}, {"evolution.alpha", "0.5"},
      {"damping.form", "raised-cosine"}, {"damping.lambda", "1"}, {"damping.epsilon", "0.25"},
      {"damping2.form", "raised-cosine"}, {"damping2.lambda", "1"}, {"damping2.epsilon", "0.25"},
      {"initial.profile", "sech"}, {"initial.amplitude", "0.5"}, {"initial.second", "1"},
      {"analysis.sigma0", "1"}, {"analysis.theta", "0.25"}, {"analysis.k_max", "20"}}},
    {"inequalities", {}},
};

const std::vector<std::string> kIds = {"inequalities", "conservation", "sigma-scaling", "damping",
                                       "iterate",      "radius",       "coupled"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto* end = t.data() + t.size();
  const auto [p, ec] = std::from_chars(t.data(), end, out);
  return ec == std::errc() && p == end && std::isfinite(out);
}

bool parse_int(const std::string& s, long long& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto* end = t.data() + t.size();
  const auto [p, ec] = std::from_chars(t.data(), end, out);
  return ec == std::errc() && p == end;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

const char* kind_name(ValueKind k) {
  switch (k) {
    case K::Real: return "a real number";
    case K::Integer: return "an integer";
    case K::Boolean: return "true or false";
    case K::Text: return "text";
    case K::RealList: return "a comma-separated list of reals";
  }
  return "?";
}

bool well_typed(ValueKind kind, const std::string& v) {
  double d = 0.0;
  long long i = 0;
  switch (kind) {
    case K::Real: return parse_real(v, d);
    case K::Integer: return parse_int(v, i);
    case K::Boolean: return v == "true" || v == "false";
    case K::Text: return true;
    case K::RealList: {
      if (trim(v).empty()) return true;
      for (const auto& item : split_list(v)) {
        if (!parse_real(item, d)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

const std::vector<KeySpec>& config_schema() { return kSchema; }

const KeySpec* find_key(const std::string& dotted) {
  for (const auto& k : kSchema) {
    if (k.name == dotted) return &k;
  }
  return nullptr;
}

bool is_section(const std::string& section) {
  const std::string prefix = section + ".";
  return std::any_of(kSchema.begin(), kSchema.end(),
                     [&](const KeySpec& k) { return k.name.compare(0, prefix.size(), prefix) == 0; });
}

const std::vector<std::string>& scenario_ids() { return kIds; }

ScenarioConfig ScenarioConfig::defaults(const std::string& scenario) {
  const auto it = kScenarioDefaults.find(scenario);
  if (it == kScenarioDefaults.end()) throw ConfigError("unknown scenario '" + scenario + "'");
  ScenarioConfig cfg;
  for (const auto& k : kSchema) cfg.values_[k.name] = k.fallback;
  cfg.values_["scenario.id"] = scenario;
  for (const auto& [key, value] : it->second) cfg.set(key, value);
  return cfg;
}

void ScenarioConfig::set(const std::string& dotted, const std::string& value) {
  const KeySpec* spec = find_key(dotted);
  if (spec == nullptr) throw ConfigError("unknown configuration key '" + dotted + "'");
  const std::string v = trim(value);
  if (!well_typed(spec->kind, v)) {
    throw ConfigError("'" + dotted + "' expects " + kind_name(spec->kind) + ", got '" + v + "'");
  }
  values_[dotted] = v;
}

const std::string& ScenarioConfig::raw(const std::string& dotted) const {
  const auto it = values_.find(dotted);
  if (it == values_.end()) throw ConfigError("configuration key '" + dotted + "' is not set");
  return it->second;
}

double ScenarioConfig::real(const std::string& dotted) const {
  double d = 0.0;
  if (!parse_real(raw(dotted), d)) throw ConfigError("'" + dotted + "' is not a real number");
  return d;
}

int ScenarioConfig::integer(const std::string& dotted) const {
  long long i = 0;
  if (!parse_int(raw(dotted), i)) throw ConfigError("'" + dotted + "' is not an integer");
  return static_cast<int>(i);
}

bool ScenarioConfig::boolean(const std::string& dotted) const { return raw(dotted) == "true"; }

std::vector<double> ScenarioConfig::reals(const std::string& dotted) const {
  std::vector<double> out;
  if (trim(raw(dotted)).empty()) return out;
  for (const auto& item : split_list(raw(dotted))) {
    double d = 0.0;
    parse_real(item, d);
    out.push_back(d);
  }
  return out;
}

void validate(const ScenarioConfig& cfg) {
  const std::string id = cfg.id();
  if (std::find(kIds.begin(), kIds.end(), id) == kIds.end()) throw ConfigError("unknown scenario '" + id + "'");

  for (const auto& [key, value] : cfg.values()) {
    if (key.rfind("tolerances.", 0) == 0 && !(cfg.real(key) >= 0.0)) {
      throw ConfigError("tolerance '" + key + "' must be >= 0");
    }
  }
  for (const char* list : {"analysis.sigma", "analysis.rate_sigma", "analysis.f_sigma", "analysis.g_sigma"}) {
    const auto v = cfg.reals(list);
    if (!std::is_sorted(v.begin(), v.end())) throw ConfigError(std::string(list) + " must be sorted ascending");
    if (std::any_of(v.begin(), v.end(), [](double s) { return s < 0.0; })) {
      throw ConfigError(std::string(list) + " entries must be >= 0");
    }
  }
  if (id == "inequalities") return;

  const Grid grid = Grid::make(cfg.real("grid.L"), cfg.integer("grid.N"));
  if (!(cfg.real("evolution.dt") > 0.0)) throw ConfigError("evolution.dt must be > 0");
  if (!(cfg.real("evolution.t_end") >= 0.0)) throw ConfigError("evolution.t_end must be >= 0");
  if (cfg.integer("evolution.record_every") < 1) throw ConfigError("evolution.record_every must be >= 1");
  if (!(cfg.real("analysis.sigma0") > 0.0)) throw ConfigError("analysis.sigma0 must be > 0");

  const std::string eq = cfg.text("evolution.equation");
  const int mu = cfg.integer("evolution.mu");
  const double sigma0 = cfg.real("analysis.sigma0");
  auto damping = [&](const std::string& section) {
    return make_damping(damping_form_from_string(cfg.text(section + ".form")), cfg.real(section + ".lambda"),
                        cfg.real(section + ".epsilon"), grid, sigma0);
  };
  if (eq == "mkdv") {
    validate(Equation{MKdV{mu}});
  } else if (eq == "mkdvm") {
    validate(Equation{MKdVm{cfg.integer("evolution.m"), mu, damping("damping")}});
  } else if (eq == "coupled") {
    validate(Equation{Coupled{cfg.real("evolution.alpha"), mu, damping("damping"), damping("damping2")}});
  } else {
    throw ConfigError("evolution.equation must be mkdv, mkdvm or coupled, got '" + eq + "'");
  }

  const std::string profile = cfg.text("initial.profile");
  if (profile != "soliton" && profile != "sech" && profile != "gaussian" && profile != "packet" &&
      profile != "zero") {
    throw ConfigError("initial.profile must be soliton, sech, gaussian, packet or zero, got '" + profile + "'");
  }
  if (!(cfg.real("initial.width") > 0.0)) throw ConfigError("initial.width must be > 0");

  const auto sig = cfg.reals("analysis.sigma");
  if (!sig.empty() && sig.back() * grid.max_frequency() > 600.0) {
    throw ConfigError("analysis.sigma: sigma_max * xi_max exceeds 600");
  }
  const std::string policy = cfg.text("analysis.c1_policy");
  if (policy != "empirical" && policy != "fixed") throw ConfigError("analysis.c1_policy must be empirical or fixed");
  if (!(cfg.real("analysis.c0") > 0.0)) throw ConfigError("analysis.c0 must be > 0");
  if (!(cfg.real("analysis.d") > 1.0)) throw ConfigError("analysis.d must be > 1");
  const double theta = cfg.real("analysis.theta");
  if (!(theta >= 0.0 && theta <= 1.0)) throw ConfigError("analysis.theta must lie in [0, 1] (0 selects theta_max)");
  if (cfg.integer("analysis.k_max") < 0) throw ConfigError("analysis.k_max must be >= 0");
  if (cfg.integer("analysis.records_per_window") < 1) {
    throw ConfigError("analysis.records_per_window must be >= 1");
  }
  if (cfg.integer("analysis.rate_stride") < 2) throw ConfigError("analysis.rate_stride must be >= 2");
}

}  // namespace gevreyflow
