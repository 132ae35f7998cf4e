#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gevreyflow/harness/report.hpp"

namespace gevreyflow {

/// Full report as indented JSON; non-finite numbers become null.
std::string report_to_json(const ExperimentReport& report, bool include_wall_clock = true);

/// 64-bit FNV-1a of the canonical report JSON without wall_clock_seconds.
std::uint64_t content_hash(const ExperimentReport& report);
std::string hash_hex(std::uint64_t hash);

/// RFC-4180 CSV with a header row and 17 significant digits per value.
std::string series_to_csv(const Series& series);
/// Inverse of series_to_csv (name taken from the argument). ParseError on malformed input.
Series series_from_csv(const std::string& name, const std::string& text);

/// File-name stem for a series or plot: characters outside [A-Za-z0-9._-] become '_'.
std::string file_stem(const std::string& name);

/// Writes dir/report.json, dir/series/<name>.csv for each series and, when
/// output.plots is true, dir/plots/<file>.svg; then appends one line to
/// `registry`. Returns the written paths (registry last). IoError names the
/// failing path.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                                const std::filesystem::path& registry);

/// Appends one JSON line {scenario, hash, passed, ...}; appends are serialized
/// across threads.
void append_registry(const std::filesystem::path& registry, const ExperimentReport& report,
                     const std::filesystem::path& report_path);

}  // namespace gevreyflow
