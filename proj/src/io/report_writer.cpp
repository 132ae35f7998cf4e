#include "gevreyflow/io/report_writer.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "gevreyflow/error.hpp"
#include "gevreyflow/io/svg.hpp"
#include "json.hpp"

namespace gevreyflow {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json build_json(const ExperimentReport& r, bool include_wall_clock) {
  json j;
  j["scenario"] = r.scenario;
  j["passed"] = r.passed();

  json cfg = json::object();
  for (const auto& [k, v] : r.config.values()) cfg[k] = v;
  j["config"] = cfg;

  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name},
                        {"passed", v.passed},
                        {"value", number(v.value)},
                        {"lower", number(v.lower)},
                        {"upper", number(v.upper)},
                        {"margin", number(std::min(v.value - v.lower, v.upper - v.value))},
                        {"tolerance", v.tolerance_key},
                        {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;

  json fits = json::array();
  for (const auto& f : r.fits) {
    fits.push_back({{"name", f.name},
                    {"slope", number(f.slope)},
                    {"intercept", number(f.intercept)},
                    {"r2", number(f.r2)},
                    {"x_lo", number(f.x_lo)},
                    {"x_hi", number(f.x_hi)},
                    {"points", f.points}});
  }
  j["fits"] = fits;

  json scalars = json::array();
  for (const auto& [k, v] : r.scalars) scalars.push_back({{"name", k}, {"value", number(v)}});
  j["scalars"] = scalars;
  j["warnings"] = r.warnings;

  json series = json::array();
  for (const auto& s : r.series) {
    json rows = json::array();
    for (const auto& row : s.rows) {
      json jr = json::array();
      for (double v : row) jr.push_back(number(v));
      rows.push_back(std::move(jr));
    }
    series.push_back({{"name", s.name}, {"columns", s.columns}, {"rows", std::move(rows)}});
  }
  j["series"] = series;

  json plots = json::array();
  for (const auto& p : r.plots) plots.push_back(p.file + ".svg");
  j["plots"] = plots;
  if (include_wall_clock) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC-4180 records; fields may be quoted, quotes doubled, CRLF or LF line ends.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false, field_started = false;
  int line = 1, col = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    ++col;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line, col = 0;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (field_started) throw ParseError("quote inside unquoted CSV field", line, col);
      quoted = field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(field));
      records.push_back(std::move(record));
      record.clear();
      field.clear();
      field_started = false;
      ++line;
      col = 0;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line, col);
  if (field_started || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::mutex registry_mutex;

}  // namespace

std::string report_to_json(const ExperimentReport& report, bool include_wall_clock) {
  return build_json(report, include_wall_clock).dump(2);
}

std::uint64_t content_hash(const ExperimentReport& report) {
  const std::string text = build_json(report, false).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string series_to_csv(const Series& series) {
  std::string out;
  for (std::size_t i = 0; i < series.columns.size(); ++i) {
    if (i) out += ',';
    out += quote_field(series.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_value(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

Series series_from_csv(const std::string& name, const std::string& text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw ParseError("CSV has no header row", 1, 1);
  Series s{name, records.front(), {}};
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != s.columns.size()) {
      throw ParseError("CSV row has " + std::to_string(records[r].size()) + " fields, header has " +
                           std::to_string(s.columns.size()),
                       static_cast<int>(r) + 1, 1);
    }
    std::vector<double> row;
    for (std::size_t c = 0; c < records[r].size(); ++c) {
      const std::string& f = records[r][c];
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw ParseError("non-numeric CSV field '" + f + "'", static_cast<int>(r) + 1, static_cast<int>(c) + 1);
      }
      row.push_back(v);
    }
    s.add(std::move(row));
  }
  return s;
}

std::string file_stem(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-')) c = '_';
  }
  return out.empty() ? "_" : out;
}

void append_registry(const fs::path& registry, const ExperimentReport& report, const fs::path& report_path) {
  const json line = {{"scenario", report.scenario},
                     {"hash", hash_hex(content_hash(report))},
                     {"passed", report.passed()},
                     {"verdicts", report.verdicts.size()},
                     {"report", report_path.string()},
                     {"wall_clock_seconds", report.wall_clock_seconds}};
  std::lock_guard lock(registry_mutex);
  if (registry.has_parent_path()) make_dirs(registry.parent_path());
  std::ofstream out(registry, std::ios::app);
  if (!out) throw IoError("cannot append to " + registry.string());
  out << line.dump() << '\n';
  if (!out) throw IoError("write failed for " + registry.string());
}

std::vector<fs::path> write_report(const ExperimentReport& report, const fs::path& dir, const fs::path& registry) {
  std::vector<fs::path> written;
  make_dirs(dir);
  const fs::path json_path = dir / "report.json";
  write_file(json_path, report_to_json(report) + "\n");
  written.push_back(json_path);

  if (!report.series.empty()) {
    make_dirs(dir / "series");
    for (const auto& s : report.series) {
      const fs::path p = dir / "series" / (file_stem(s.name) + ".csv");
      write_file(p, series_to_csv(s));
      written.push_back(p);
    }
  }

  const auto plots_flag = report.config.values().find("output.plots");
  const bool plots = plots_flag == report.config.values().end() || plots_flag->second == "true";
  if (plots && !report.plots.empty()) {
    make_dirs(dir / "plots");
    for (const auto& spec : report.plots) {
      const fs::path p = dir / "plots" / (file_stem(spec.file) + ".svg");
      write_file(p, plot_series(report.find_series(spec.series), spec));
      written.push_back(p);
    }
  }

  append_registry(registry, report, json_path);
  written.push_back(registry);
  return written;
}

}  // namespace gevreyflow
