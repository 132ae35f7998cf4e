#include "gevreyflow/inequalities/manifest.hpp"

#include <fstream>
#include <sstream>

#include "gevreyflow/error.hpp"
#include "json.hpp"

namespace gevreyflow {

using nlohmann::json;

std::filesystem::path default_constants_path() {
  return std::filesystem::path(GEVREYFLOW_DATA_DIR) / "constants.json";
}

namespace {

double positive(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError("constants manifest: missing numeric '" + std::string(key) + "' in " + where);
  }
  const double v = j.at(key).get<double>();
  if (!(v > 0.0)) throw ConfigError("constants manifest: '" + std::string(key) + "' must be > 0 in " + where);
  return v;
}

const json& section(const json& root, const char* name) {
  if (!root.contains(name) || !root.at(name).is_object()) {
    throw ConfigError("constants manifest: missing section '" + std::string(name) + "'");
  }
  return root.at(name);
}

}  // namespace

ConstantsManifest load_constants(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read constants manifest " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0, static_cast<int>(e.byte));
  }
  ConstantsManifest m;
  m.sinh = positive(section(root, "sinh"), "constant", "sinh");
  m.cosh_minus_one = positive(section(root, "cosh_minus_one"), "constant", "cosh_minus_one");
  const auto& eq = section(root, "equivalence");
  m.equivalence_lower = positive(eq, "lower", "equivalence");
  m.equivalence_upper = positive(eq, "upper", "equivalence");
  const auto& tc = section(root, "triple_cosh");
  m.triple_cosh_K = positive(tc, "constant", "triple_cosh");
  if (tc.contains("scan")) {
    const auto& s = tc.at("scan");
    auto& scan = m.triple_cosh_scan;
    scan.points = s.value("points", 50);
    scan.sigma_max = s.value("sigma_max", 2.0);
    scan.xi_max = s.value("xi_max", 20.0);
    scan.theta1 = s.value("theta1", 1.0);
    scan.theta2 = s.value("theta2", 1.0);
    scan.evaluated = s.value("evaluated", std::uint64_t{0});
    scan.violations = s.value("violations", std::uint64_t{0});
    scan.supremum = s.value("supremum", 0.0);
    scan.K = m.triple_cosh_K;
    scan.certified_K = m.triple_cosh_K;
  }
  return m;
}

std::string constants_to_json(const ConstantsManifest& m) {
  const auto& s = m.triple_cosh_scan;
  json root = {
      {"sinh", {{"kind", "exact"}, {"constant", m.sinh}}},
      {"cosh_minus_one", {{"kind", "exact"}, {"constant", m.cosh_minus_one}}},
      {"equivalence", {{"kind", "exact"}, {"lower", m.equivalence_lower}, {"upper", m.equivalence_upper}}},
      {"triple_cosh",
       {{"kind", "certified"},
        {"constant", m.triple_cosh_K},
        {"scan",
         {{"points", s.points},
          {"sigma_max", s.sigma_max},
          {"xi_max", s.xi_max},
          {"theta1", s.theta1},
          {"theta2", s.theta2},
          {"evaluated", s.evaluated},
          {"violations", s.violations},
          {"supremum", s.supremum}}}}},
  };
  return root.dump(2) + "\n";
}

}  // namespace gevreyflow
