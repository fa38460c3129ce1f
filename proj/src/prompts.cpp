#include "a11y/prompts.hpp"

#include <algorithm>

#include "a11y/core.hpp"
#include "a11y/text_util.hpp"

namespace a11y::prompts {

namespace {

// Prompts are append-only across strategies so that a weaker strategy's text
// is always a substring of a stronger one's after whitespace collapsing.
constexpr const char* kPersona =
    "Act as a software developer. Write code from a file description covering "
    "all necessary aspects.";
constexpr const char* kComplianceInstruction =
    "Make code compliant with WCAG accessibility rules. Avoid any violations.";
constexpr const char* kReviewerPersona = "Act as a code reviewer.";
constexpr const char* kReviewerInstruction =
    "Review code for WCAG compliance. Return unchanged if compliant, fix "
    "issues if not.";
constexpr const char* kFixerPersona = "Act as a software developer.";
constexpr const char* kSummaryPersona = "Act as a software developer.";
constexpr const char* kSummaryInstruction =
    "Summarize the following file for a developer who will rewrite it from "
    "the summary alone. Cover the function name, the inputs, the outputs, "
    "the purpose, the workflow, and a short overview of the file as a whole.";
constexpr const char* kScaffold =
    "Work in three steps.\n"
    "Thought: explain why each reported violation occurs in this code.\n"
    "Action: rewrite the code block. In the Action step, focus only on the "
    "accessibility violations specified in the report, and preserve the "
    "overall structure and functionality of the code.\n"
    "Observation: state what changed and check each reported violation "
    "against the rewritten code.\n"
    "Finish with the complete rewritten code block in a single fenced code "
    "block.";

std::string snippet_language(const std::string& path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".css") == 0) return "css";
  return "html";
}

std::string example_entry(const Exemplar& ex, bool with_description,
                          bool with_code) {
  std::string out = "### " + ex.rule_id + "\n";
  if (with_description && !ex.description.empty()) out += ex.description + "\n";
  if (with_code) {
    std::string lang = snippet_language(ex.correct_path);
    out += "\nCorrect:\n```" + lang + "\n" + ex.correct_code + "\n```\n";
    out += "\nIncorrect:\n```" + lang + "\n" + ex.counter_code + "\n```\n";
  }
  return out;
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kNaive: return "naive";
    case Strategy::kZeroShot: return "zero-shot";
    case Strategy::kFewShot: return "few-shot";
    case Strategy::kSelfCriticism: return "self-criticism";
    case Strategy::kFeedA11y: return "feeda11y";
  }
  return "naive";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::kNaive;
  if (name == "zero-shot" || name == "zeroshot") return Strategy::kZeroShot;
  if (name == "few-shot" || name == "fewshot") return Strategy::kFewShot;
  if (name == "self-criticism") return Strategy::kSelfCriticism;
  if (name == "feeda11y") return Strategy::kFeedA11y;
  return std::nullopt;
}

std::vector<gateway::Message> build_prompt(Strategy strategy,
                                           const std::string& summary,
                                           const PromptOptions& options,
                                           const ExemplarLibrary* exemplars) {
  if (trim_copy(summary).empty()) throw ConfigError("build_prompt: empty summary");

  // Strategies clamp the feature switches: naive (and the feeda11y initial
  // generation) use a clean prompt, zero-shot adds only the compliance
  // instruction, few-shot may additionally carry descriptions and examples.
  PromptOptions eff = PromptOptions::all_off();
  switch (strategy) {
    case Strategy::kNaive:
    case Strategy::kFeedA11y:
      break;
    case Strategy::kZeroShot:
    case Strategy::kSelfCriticism:
      eff.accessibility_instructions = true;
      break;
    case Strategy::kFewShot:
      eff.accessibility_instructions = true;
      eff.guideline_descriptions = options.guideline_descriptions;
      eff.code_examples = options.code_examples;
      break;
  }

  std::string body = "## File description\n";
  body += summary;
  if (eff.accessibility_instructions) {
    body += "\n\n";
    body += kComplianceInstruction;
  }
  if (strategy == Strategy::kFewShot) {
    if (!exemplars || exemplars->entries().empty())
      throw ConfigError("few-shot prompt needs a non-empty exemplar library");
    body += "\n\n## Accessibility rules with correct and incorrect examples\n";
    for (const auto& ex : exemplars->entries()) {
      body += "\n" + example_entry(ex, eff.guideline_descriptions, eff.code_examples);
    }
  }
  return {{"system", kPersona}, {"user", body}};
}

std::vector<gateway::Message> build_review_prompt(const std::string& code) {
  if (code.empty()) throw ConfigError("build_review_prompt: empty code");
  std::string body = kReviewerInstruction;
  body += "\n\n```html\n" + code + "\n```";
  return {{"system", kReviewerPersona}, {"user", body}};
}

nlohmann::json findings_to_json(const std::vector<rules::Finding>& findings) {
  auto arr = nlohmann::json::array();
  for (const auto& f : findings) {
    arr.push_back({{"rule_id", f.rule_id},
                   {"path", f.path},
                   {"span", {{"start", f.span.start}, {"end", f.span.end}}},
                   {"message", f.message},
                   {"evidence", f.evidence}});
  }
  return nlohmann::json{{"findings", std::move(arr)}};
}

std::vector<gateway::Message> build_react_prompt(const ReactContext& context,
                                                 const PromptOptions& options) {
  if (context.findings.empty())
    throw ConfigError("build_react_prompt: no findings for this block");
  for (const auto& f : context.findings) {
    if (f.span.end > context.code.size() || f.span.start > f.span.end)
      throw ConfigError("build_react_prompt: finding span outside the block");
  }
  if (context.language != "html" && context.language != "css")
    throw ConfigError("build_react_prompt: language must be html or css");

  std::string body;
  if (!trim_copy(context.summary).empty()) {
    body += "## Code summary\n" + context.summary + "\n\n";
  }
  if (options.accessibility_instructions) {
    body += kComplianceInstruction;
    body += "\n\n";
  }
  if (options.guideline_descriptions && !context.guideline_descriptions.empty()) {
    body += "## Guideline descriptions\n";
    for (const auto& line : context.guideline_descriptions) body += "- " + line + "\n";
    body += "\n";
  }
  if (options.code_examples && !context.examples.empty()) {
    // Example fences come before the report and code fences on purpose: the
    // last json fence is always the report, the last html/css fence the code.
    body += "## Rule examples\n";
    for (const auto& ex : context.examples) body += "\n" + example_entry(ex, true, true);
    body += "\n";
  }
  if (options.testing_rules && !context.testing_rules.empty()) {
    body += "## Testing rules\n";
    for (const auto& line : context.testing_rules) body += "- " + line + "\n";
    body += "\n";
  }
  if (options.style_properties && !trim_copy(context.style_properties).empty()) {
    body += "## Style properties\n```\n" + context.style_properties + "\n```\n\n";
  }
  body += "## Accessibility report\n```json\n";
  body += findings_to_json(context.findings).dump(2);
  body += "\n```\n\n";
  body += "## Code block\n```" + context.language + "\n" + context.code + "\n```\n\n";
  body += kScaffold;
  return {{"system", kFixerPersona}, {"user", body}};
}

std::vector<gateway::Message> build_summary_prompt(const std::string& code) {
  if (code.empty()) throw ConfigError("build_summary_prompt: empty code");
  std::string body = kSummaryInstruction;
  body += "\n\n```\n" + code + "\n```";
  return {{"system", kSummaryPersona}, {"user", body}};
}

std::string render_messages(const std::vector<gateway::Message>& messages) {
  std::string out;
  for (const auto& m : messages) {
    out += "[" + m.role + "]\n" + m.content + "\n\n";
  }
  return out;
}

uint64_t template_hash() {
  const char* parts[] = {kPersona,      kComplianceInstruction, kReviewerPersona,
                         kReviewerInstruction, kFixerPersona,   kSummaryPersona,
                         kSummaryInstruction,  kScaffold};
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* p : parts) {
    for (const char* c = p; *c; ++c) {
      h ^= static_cast<unsigned char>(*c);
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1e;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace a11y::prompts
