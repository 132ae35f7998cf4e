#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gevreyflow/harness/config.hpp"

namespace gevreyflow {

// Config grammar (one statement per line):
//
//   # comment                 ; also after '#' anywhere outside a value
//   [section]                 ; one of the schema sections
//   key = value               ; key of the current section
//
// Values run to the end of the line (or a '#') and are trimmed; lists are
// comma separated. Keys may also be written fully qualified as
// section.key = value, in which case the current section is ignored.

/// Parses config text on top of the defaults of `scenario`, or of the
/// scenario named by a scenario.id key in the text if `scenario` is empty.
/// Overrides ("section.key=value") are applied last and the result is
/// validated. ParseError (with line/column) for syntax errors, unknown
/// sections/keys and ill-typed values; ConfigError for failed validation
/// or a scenario.id that contradicts `scenario`.
ScenarioConfig parse_config_text(const std::string& text, const std::string& scenario = {},
                                 const std::vector<std::string>& overrides = {});

/// parse_config_text on a file; IoError if it cannot be read.
ScenarioConfig parse_config(const std::filesystem::path& path, const std::string& scenario = {},
                            const std::vector<std::string>& overrides = {});

/// Defaults of `scenario` with overrides applied, validated.
ScenarioConfig config_with_overrides(const std::string& scenario, const std::vector<std::string>& overrides);

/// Applies one "section.key=value" override; ConfigError if malformed.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

/// Config text in schema order; parse_config_text(to_config_text(c)) == c.
std::string to_config_text(const ScenarioConfig& cfg);

}  // namespace gevreyflow
