#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/exemplars.hpp"
#include "a11y/gateway.hpp"
#include "a11y/rules.hpp"

namespace a11y::prompts {

enum class Strategy { kNaive, kZeroShot, kFewShot, kSelfCriticism, kFeedA11y };

std::string strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

// Feature switches for the refinement prompt; generation strategies clamp
// them (naive turns everything off, zero-shot keeps instructions only).
struct PromptOptions {
  bool accessibility_instructions = true;
  bool guideline_descriptions = true;
  bool code_examples = true;
  bool testing_rules = true;
  bool style_properties = true;

  static PromptOptions all_off() { return {false, false, false, false, false}; }
};

// Everything one per-block refinement call needs. Finding spans are relative
// to `code`.
struct ReactContext {
  std::string summary;  // may be empty
  std::string language = "html";
  std::string code;
  std::vector<rules::Finding> findings;
  std::vector<std::string> guideline_descriptions;
  std::vector<Exemplar> examples;
  std::vector<std::string> testing_rules;
  std::string style_properties;
};

// Generation prompt. naive: persona + file description. zero-shot adds the
// compliance instruction, few-shot adds per-rule correct/counter entries for
// the full library. The library may be null except for few-shot.
std::vector<gateway::Message> build_prompt(Strategy strategy,
                                           const std::string& summary,
                                           const PromptOptions& options,
                                           const ExemplarLibrary* exemplars);

// Reviewer prompt for the self-criticism round.
std::vector<gateway::Message> build_review_prompt(const std::string& code);

// Per-block refinement prompt with the Thought/Action/Observation scaffold.
// The code fence is the last html/css fence in the prompt by construction;
// rule-example fences always come before it.
std::vector<gateway::Message> build_react_prompt(const ReactContext& context,
                                                 const PromptOptions& options);

// Summarization prompt enumerating the six facets; no accessibility wording.
std::vector<gateway::Message> build_summary_prompt(const std::string& code);

nlohmann::json findings_to_json(const std::vector<rules::Finding>& findings);

std::string render_messages(const std::vector<gateway::Message>& messages);

// Stable hash of all template text, recorded in run manifests so prompt
// changes are visible in provenance.
uint64_t template_hash();

}  // namespace a11y::prompts
