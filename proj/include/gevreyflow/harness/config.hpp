#pragma once

#include <map>
#include <string>
#include <vector>

namespace gevreyflow {

enum class ValueKind { Real, Integer, Boolean, Text, RealList };

struct KeySpec {
  std::string name;  // "section.key"
  ValueKind kind;
  std::string fallback;
  std::string help;
};

/// Every key a scenario config may contain, with its type and global default.
const std::vector<KeySpec>& config_schema();
const KeySpec* find_key(const std::string& dotted);
bool is_section(const std::string& section);

/// Scenario ids in the order `all` runs them.
const std::vector<std::string>& scenario_ids();

/// Flat map of "section.key" -> textual value. Values are type-checked when
/// set and kept verbatim, so an echoed config parses back to an equal one.
class ScenarioConfig {
 public:
  /// Schema defaults overlaid with the named scenario's defaults.
  /// ConfigError for an unknown scenario.
  static ScenarioConfig defaults(const std::string& scenario);

  /// ConfigError for an unknown key or a value of the wrong type.
  void set(const std::string& dotted, const std::string& value);

  const std::string& raw(const std::string& dotted) const;
  double real(const std::string& dotted) const;
  int integer(const std::string& dotted) const;
  bool boolean(const std::string& dotted) const;
  const std::string& text(const std::string& dotted) const { return raw(dotted); }
  std::vector<double> reals(const std::string& dotted) const;

  std::string id() const { return raw("scenario.id"); }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

 private:
  std::map<std::string, std::string> values_;
};

/// Checks the module preconditions the scenario will rely on (grid, equation,
/// damping certification against sigma0, sorted sigma lists, positive
/// tolerances). Throws ConfigError naming the violated condition.
void validate(const ScenarioConfig& cfg);

}  // namespace gevreyflow
