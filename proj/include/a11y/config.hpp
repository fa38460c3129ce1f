#pragma once

#include <map>
#include <optional>
#include <string>

namespace a11y::cli {

// Flat key=value settings. Values are strings; numeric accessors parse on
// demand. The API key deliberately has no slot here: it is read from the
// A11Y_API_KEY environment variable by the live backend itself.
struct Config {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
};

// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
// Keys are lowercased. Any key that looks like an API-key slot is rejected.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Environment beats file: every key gains an A11Y_<KEY-uppercased> override.
void apply_env_overrides(Config& config);

}  // namespace a11y::cli
