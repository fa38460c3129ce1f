#include <algorithm>

#include "a11y/text_util.hpp"
#include "rules_internal.hpp"

namespace a11y::rules {

std::string ruleset_name(Ruleset rs) { return rs == Ruleset::kA ? "A" : "Q"; }

std::optional<Ruleset> parse_ruleset(std::string_view name) {
  std::string n = to_lower_ascii(trim_copy(name));
  if (n == "a") return Ruleset::kA;
  if (n == "q") return Ruleset::kQ;
  return std::nullopt;
}

std::string level_name(Level level) {
  switch (level) {
    case Level::kViolation:
      return "violation";
    case Level::kPotentialViolation:
      return "potential-violation";
    case Level::kRecommendation:
      return "recommendation";
    case Level::kPotentialRecommendation:
      return "potential-recommendation";
    case Level::kManual:
      return "manual";
    case Level::kPassed:
      return "passed";
    case Level::kWarning:
      return "warning";
    case Level::kFailed:
      return "failed";
    case Level::kInapplicable:
      return "inapplicable";
  }
  return "violation";
}

bool counted_level(Ruleset rs, Level level) {
  return rs == Ruleset::kA ? level == Level::kViolation : level == Level::kFailed;
}

std::set<long> AccessibilityReport::violating_keys() const {
  std::set<long> keys;
  for (const auto& f : findings) {
    if (counted(f)) keys.insert(f.key);
  }
  return keys;
}

std::set<long> AccessibilityReport::applicable_keys() const {
  std::set<long> keys;
  for (const auto& [rule, set] : census) keys.insert(set.begin(), set.end());
  return keys;
}

const std::vector<RegisteredRule>& registry(Ruleset rs) {
  static const std::vector<RegisteredRule> a = make_registry_a();
  static const std::vector<RegisteredRule> q = make_registry_q();
  return rs == Ruleset::kA ? a : q;
}

const std::vector<Rule>& catalog(Ruleset rs) {
  static const auto build = [](Ruleset which) {
    std::vector<Rule> rules;
    for (const auto& r : registry(which)) rules.push_back(r.meta);
    return rules;
  };
  static const std::vector<Rule> a = build(Ruleset::kA);
  static const std::vector<Rule> q = build(Ruleset::kQ);
  return rs == Ruleset::kA ? a : q;
}

const Rule* find_rule(Ruleset rs, std::string_view rule_id) {
  for (const auto& r : catalog(rs)) {
    if (r.id == rule_id) return &r;
  }
  return nullptr;
}

std::vector<std::string> implemented_rule_ids(Ruleset rs) {
  std::vector<std::string> ids;
  for (const auto& r : catalog(rs)) {
    if (r.implemented) ids.push_back(r.id);
  }
  return ids;
}

namespace {

// Declaration blocks whose bytes live in the evaluated file: embedded and
// inline styles always, external sheets only when the document *is* the
// stylesheet (css_document). Linked sheets get reported under their own path.
std::vector<BlockRef> collect_blocks(const dom::Document& doc) {
  std::vector<BlockRef> refs;
  int ordinal = 0;
  for (int si = 0; si < static_cast<int>(doc.stylesheets.size()); ++si) {
    const auto& sheet = doc.stylesheets[si];
    bool in_file = sheet.origin != css::Stylesheet::Origin::kExternalFile ||
                   sheet.source_path == doc.path;
    for (int bi = 0; bi < static_cast<int>(sheet.blocks.size()); ++bi) {
      if (!in_file) continue;
      if (sheet.blocks[bi].at_rule) continue;
      refs.push_back(BlockRef{si, bi, ordinal++});
    }
  }
  return refs;
}

}  // namespace

AccessibilityReport evaluate(const dom::Document& doc, Ruleset rs) {
  AccessibilityReport report;
  report.ruleset = rs;
  report.file = doc.path;

  style::StyleResolver styles(doc);
  RuleContext ctx{doc, styles, rs, report, collect_blocks(doc)};
  for (const auto& rule : registry(rs)) {
    if (rule.check) rule.check(ctx);
  }

  std::stable_sort(report.findings.begin(), report.findings.end(),
                   [](const Finding& a, const Finding& b) {
                     if (a.key != b.key) return a.key < b.key;
                     if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
                     if (a.span.start != b.span.start) return a.span.start < b.span.start;
                     return a.message < b.message;
                   });
  return report;
}

dom::Document css_document(std::string_view source, std::string_view path) {
  size_t bad = 0;
  if (!validate_utf8(source, &bad)) {
    throw ParseError("undecodable byte in stylesheet", bad);
  }
  dom::Document doc = dom::parse_html("", path);
  doc.source = std::string(source);
  doc.elements[0].span = {0, doc.source.size()};  // keep serialize() faithful
  auto sheet = css::parse_css(source, css::Stylesheet::Origin::kExternalFile);
  sheet.source_path = std::string(path);
  doc.stylesheets.push_back(std::move(sheet));
  return doc;
}

}  // namespace a11y::rules
