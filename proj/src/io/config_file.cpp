#include "gevreyflow/io/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gevreyflow/error.hpp"

namespace gevreyflow {

namespace {

struct Assignment {
  std::string key;  // dotted
  std::string value;
  int line;
  int column;  // of the value
};

std::size_t skip_blank(const std::string& s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
  return s;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  }
  return true;
}

std::vector<Assignment> tokenize(const std::string& text) {
  std::vector<Assignment> out;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = rtrim(raw.substr(0, raw.find('#')));
    std::size_t i = skip_blank(line, 0);
    if (i == line.size()) continue;
    const int col = static_cast<int>(i) + 1;

    if (line[i] == '[') {
      const auto close = line.find(']', i);
      if (close == std::string::npos) throw ParseError("unterminated section header", line_no, col);
      if (skip_blank(line, close + 1) != line.size()) {
        throw ParseError("unexpected text after section header", line_no, static_cast<int>(close) + 2);
      }
      const std::string name = rtrim(line.substr(skip_blank(line, i + 1), close - skip_blank(line, i + 1)));
      if (!is_section(name)) throw ParseError("unknown section [" + name + "]", line_no, col + 1);
      section = name;
      continue;
    }

    const auto eq = line.find('=', i);
    if (eq == std::string::npos) throw ParseError("expected 'key = value' or '[section]'", line_no, col);
    const std::string key = rtrim(line.substr(i, eq - i));
    if (!valid_name(key)) throw ParseError("malformed key '" + key + "'", line_no, col);
    std::string dotted;
    if (key.find('.') != std::string::npos) {
      dotted = key;
    } else {
      if (section.empty()) throw ParseError("key '" + key + "' outside any section", line_no, col);
      dotted = section + "." + key;
    }
    if (find_key(dotted) == nullptr) throw ParseError("unknown key '" + dotted + "'", line_no, col);
    const std::size_t v = skip_blank(line, eq + 1);
    out.push_back({dotted, line.substr(std::min(v, line.size())), line_no, static_cast<int>(v) + 1});
  }
  return out;
}

}  // namespace

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  }
  std::string key = assignment.substr(0, eq);
  while (!key.empty() && key.back() == ' ') key.pop_back();
  cfg.set(key, assignment.substr(eq + 1));
}

ScenarioConfig config_with_overrides(const std::string& scenario, const std::vector<std::string>& overrides) {
  ScenarioConfig cfg = ScenarioConfig::defaults(scenario);
  for (const auto& o : overrides) apply_override(cfg, o);
  validate(cfg);
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& scenario,
                                 const std::vector<std::string>& overrides) {
  const auto assignments = tokenize(text);
  std::string id = scenario;
  for (const auto& a : assignments) {
    if (a.key != "scenario.id") continue;
    const std::string named = rtrim(a.value);
    if (!scenario.empty() && named != scenario) {
      throw ConfigError("config file is for scenario '" + named + "' but '" + scenario + "' was requested");
    }
    id = named;
  }
  if (id.empty()) id = find_key("scenario.id")->fallback;

  ScenarioConfig cfg = ScenarioConfig::defaults(id);
  for (const auto& a : assignments) {
    try {
      cfg.set(a.key, a.value);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), a.line, a.column);
    }
  }
  for (const auto& o : overrides) apply_override(cfg, o);
  validate(cfg);
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path, const std::string& scenario,
                            const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config_text(text.str(), scenario, overrides);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" (line")),
                     e.line(), e.column());
  }
}

std::string to_config_text(const ScenarioConfig& cfg) {
  std::ostringstream out;
  std::string section;
  for (const auto& k : config_schema()) {
    const auto dot = k.name.find('.');
    const std::string sec = k.name.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out << '\n';
      out << '[' << sec << "]\n";
      section = sec;
    }
    out << k.name.substr(dot + 1) << " = " << cfg.raw(k.name) << '\n';
  }
  return out.str();
}

}  // namespace gevreyflow
