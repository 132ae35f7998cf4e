#pragma once

#include <filesystem>
#include <string>

#include "gevreyflow/inequalities/properties.hpp"

namespace gevreyflow {

/// Constants used by the inequality checks, as shipped in data/constants.json.
struct ConstantsManifest {
  double sinh = 1.0;
  double cosh_minus_one = 1.0;
  double equivalence_lower = 0.5;
  double equivalence_upper = 1.0;
  double triple_cosh_K = 8.0;
  LatticeScan triple_cosh_scan;
};

/// Path of the manifest in the source tree.
std::filesystem::path default_constants_path();

/// Throws IoError if unreadable, ParseError on malformed JSON, ConfigError on
/// missing or non-positive entries.
ConstantsManifest load_constants(const std::filesystem::path& path);
std::string constants_to_json(const ConstantsManifest& manifest);

}  // namespace gevreyflow
