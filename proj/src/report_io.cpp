#include <sstream>

#include "a11y/rules.hpp"
#include "a11y/text_util.hpp"

namespace a11y::rules {

nlohmann::json report_to_json(const AccessibilityReport& report) {
  nlohmann::json j;
  j["ruleset"] = ruleset_name(report.ruleset);
  j["file"] = report.file;
  auto findings = nlohmann::json::array();
  for (const auto& f : report.findings) {
    findings.push_back({{"rule_id", f.rule_id},
                        {"path", f.path},
                        {"span", {{"start", f.span.start}, {"end", f.span.end}}},
                        {"message", f.message},
                        {"evidence", f.evidence}});
  }
  j["findings"] = std::move(findings);
  auto census = nlohmann::json::object();
  for (const auto& [rule_id, keys] : report.census) {
    if (keys.empty()) continue;
    census[rule_id] = std::vector<long>(keys.begin(), keys.end());
  }
  j["census"] = std::move(census);
  return j;
}

AccessibilityReport report_from_json(const nlohmann::json& j) {
  AccessibilityReport report;
  auto rs = parse_ruleset(j.at("ruleset").get<std::string>());
  if (!rs) throw ConfigError("unknown ruleset in report: " + j.at("ruleset").dump());
  report.ruleset = *rs;
  report.file = j.at("file").get<std::string>();
  for (const auto& jf : j.at("findings")) {
    Finding f;
    f.rule_id = jf.at("rule_id").get<std::string>();
    f.level = report.ruleset == Ruleset::kA ? Level::kViolation : Level::kFailed;
    f.path = jf.at("path").get<std::string>();
    f.span.start = jf.at("span").at("start").get<size_t>();
    f.span.end = jf.at("span").at("end").get<size_t>();
    f.message = jf.at("message").get<std::string>();
    f.evidence = jf.value("evidence", nlohmann::json::object());
    f.key = f.evidence.value("key", 0L);
    report.findings.push_back(std::move(f));
  }
  if (j.contains("census")) {
    for (const auto& [rule_id, keys] : j.at("census").items()) {
      auto& set = report.census[rule_id];
      for (const auto& k : keys) set.insert(k.get<long>());
    }
  }
  return report;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string report_to_csv(const AccessibilityReport& report) {
  std::ostringstream out;
  out << "file,ruleset,rule_id,path,start,end,message\n";
  for (const auto& f : report.findings) {
    out << csv_escape(report.file) << ',' << ruleset_name(report.ruleset) << ',' << f.rule_id
        << ',' << csv_escape(f.path) << ',' << f.span.start << ',' << f.span.end << ','
        << csv_escape(f.message) << '\n';
  }
  return out.str();
}

std::string report_to_table(const AccessibilityReport& report) {
  std::ostringstream out;
  out << report.file << " [ruleset " << ruleset_name(report.ruleset) << "]\n";
  if (report.findings.empty()) {
    out << "  no findings\n";
    return out.str();
  }
  for (const auto& f : report.findings) {
    out << "  " << f.rule_id << "  " << f.path << "  [" << f.span.start << "," << f.span.end
        << ")\n      " << f.message << "\n";
  }
  return out.str();
}

}  // namespace a11y::rules
