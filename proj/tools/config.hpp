#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trefftz/harness.hpp"

namespace trefftz::cli {

/// Config problem located at `origin:line` (origin is a file name or "override").
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& origin, int line, const std::string& what);
  const std::string& origin() const { return origin_; }
  int line() const { return line_; }

private:
  std::string origin_;
  int line_;
};

struct ConfigEntry {
  std::string value;
  std::string origin;
  int line = 0;
};

/// Flat `key = value` text grouped by `[section]` headers; `#` starts a
/// comment. Keys are addressed as `section.key`.
class ConfigFile {
public:
  static ConfigFile parse(std::istream& is, const std::string& origin);
  static ConfigFile load(const std::string& path);

  /// `section.key=value`; later overrides win.
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value, const std::string& origin = "override", int line = 0);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const ConfigEntry* find(const std::string& key) const;
  const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

private:
  std::map<std::string, ConfigEntry> entries_;
};

/// Builds a study configuration, rejecting unknown keys and malformed values
/// with the location of the offending line.
StudyConfig to_study_config(const ConfigFile& cfg);

/// Degree used by `solve`: `problem.degree` if present, else the largest study degree.
int solve_degree(const ConfigFile& cfg, const StudyConfig& study);

/// Parses `2..8`, `2,4,6` or a mix such as `0,2..4`.
std::vector<int> parse_degree_list(const std::string& text);

}  // namespace trefftz::cli
