#include "a11y/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "a11y/core.hpp"
#include "a11y/text_util.hpp"

namespace a11y::cli {

namespace {

// standard keys checked for environment overrides even when the file does
// not mention them
const char* kKnownKeys[] = {"backend",     "endpoint",  "model",
                            "temperature", "max_retries", "max_in_flight",
                            "timeout_seconds", "transcript", "max_rounds",
                            "ruleset",     "optimize_ruleset", "eval_ruleset",
                            "jobs"};

bool forbidden_key(const std::string& key) {
  return key == "api_key" || key == "apikey" || key == "api-key" ||
         key == "token" || key == "secret";
}

}  // namespace

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    size_t used = 0;
    auto parsed = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing text");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a number: " + it->second);
  }
}

long Config::get_long(const std::string& key, long fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    size_t used = 0;
    auto parsed = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing text");
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer: " + it->second);
  }
}

Config parse_config(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trimmed = trim_copy(line);
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key = value: " + trimmed);
    auto key = to_lower_ascii(trim_copy(trimmed.substr(0, eq)));
    auto value = trim_copy(trimmed.substr(eq + 1));
    // strip optional quotes around the value
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front())
      value = value.substr(1, value.size() - 2);
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + " has an empty key");
    if (forbidden_key(key))
      throw ConfigError("config key '" + key +
                        "' is not allowed; secrets come from the A11Y_API_KEY "
                        "environment variable only");
    config.values[key] = value;
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_env_overrides(Config& config) {
  auto try_key = [&](const std::string& key) {
    std::string env_name = "A11Y_";
    for (char c : key) env_name += static_cast<char>(c == '-' ? '_' : std::toupper(c));
    if (const char* value = std::getenv(env_name.c_str())) config.values[key] = value;
  };
  for (const char* key : kKnownKeys) try_key(key);
  for (const auto& [key, value] : config.values) try_key(key);
}

}  // namespace a11y::cli
