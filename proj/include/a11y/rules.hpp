#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/core.hpp"
#include "a11y/dom.hpp"
#include "a11y/style_resolver.hpp"
#include "json.hpp"

namespace a11y::rules {

enum class Ruleset { kA, kQ };

std::string ruleset_name(Ruleset rs);
std::optional<Ruleset> parse_ruleset(std::string_view name);

// Ruleset A reports in the violation family, ruleset Q in the
// passed/warning/failed/inapplicable family. Only kViolation and kFailed
// count toward the metric.
enum class Level {
  kViolation,
  kPotentialViolation,
  kRecommendation,
  kPotentialRecommendation,
  kManual,
  kPassed,
  kWarning,
  kFailed,
  kInapplicable,
};

std::string level_name(Level level);
bool counted_level(Ruleset rs, Level level);

struct Rule {
  std::string id;
  Ruleset ruleset = Ruleset::kA;
  std::vector<std::string> wcag_techniques;  // empty when unmapped
  std::string description;
  Level level = Level::kViolation;  // level this rule reports at
  bool implemented = false;
};

// One defect on one element or declaration block. `key` is the census key:
// doc_index for elements, -(1 + block ordinal) for declaration blocks. The
// key is also serialized inside `evidence` so reports round-trip.
struct Finding {
  std::string rule_id;
  Level level = Level::kViolation;
  long key = 0;
  std::string path;
  SourceSpan span;
  std::string message;
  nlohmann::json evidence = nlohmann::json::object();
};

struct AccessibilityReport {
  Ruleset ruleset = Ruleset::kA;
  std::string file;
  std::vector<Finding> findings;
  // per rule, every key the rule applied to (passing elements included)
  std::map<std::string, std::set<long>> census;

  bool counted(const Finding& f) const { return counted_level(ruleset, f.level); }
  std::set<long> violating_keys() const;
  std::set<long> applicable_keys() const;
};

const std::vector<Rule>& catalog(Ruleset rs);
const Rule* find_rule(Ruleset rs, std::string_view rule_id);
std::vector<std::string> implemented_rule_ids(Ruleset rs);

AccessibilityReport evaluate(const dom::Document& doc, Ruleset rs);

// Wraps bare CSS so .css files flow through the same evaluate().
dom::Document css_document(std::string_view source, std::string_view path);

// Shared semantics, exposed for tests.
// First nonempty of: aria-labelledby referenced text, aria-label, alt (img),
// title, recursive visible text. Decoded and whitespace-collapsed.
std::string accessible_name(const dom::Document& doc, const dom::Element& el);
// Landmark variant: aria-labelledby / aria-label / title only (content text
// does not name a landmark).
std::string label_only_name(const dom::Document& doc, const dom::Element& el);
// Recursive text, skipping script/style and hidden subtrees, including image
// alt text. Decoded and collapsed.
std::string visible_text(const dom::Document& doc, const dom::Element& el);
bool is_data_table(const dom::Document& doc, const dom::Element& el);
bool is_tabbable(const dom::Element& el);
// Effective landmark role: explicit role attribute first, else the implicit
// mapping (nav, main, aside, top-level header/footer, named section).
std::string landmark_role(const dom::Document& doc, const dom::Element& el);
const dom::Element* find_by_id(const dom::Document& doc, std::string_view id);

// Report serialization. JSON schema:
// {ruleset, file, findings:[{rule_id, path, span:{start,end}, message,
//  evidence}], census:{rule_id:[key...]}}
nlohmann::json report_to_json(const AccessibilityReport& report);
AccessibilityReport report_from_json(const nlohmann::json& j);
std::string report_to_csv(const AccessibilityReport& report);
std::string report_to_table(const AccessibilityReport& report);

}  // namespace a11y::rules
