#pragma once

#include <optional>
#include <string>
#include <vector>

#include "a11y/exemplars.hpp"
#include "a11y/gateway.hpp"
#include "a11y/metrics.hpp"
#include "a11y/prompts.hpp"
#include "a11y/rules.hpp"

namespace a11y::refine {

enum class SessionStatus { kConverged, kMaxRounds, kError };
std::string status_name(SessionStatus status);

// One per-block fix attempt inside a round.
struct ReActRecord {
  std::string block_id;
  std::string prompt_fingerprint;  // hex fingerprint of the sent messages
  std::string thought;             // model text before the code fence
  std::string action;              // replacement block content
  std::string observation;         // model text after the code fence
  bool patched = false;            // action accepted and applied
  bool resolved = false;           // block's findings gone on re-check
  int attempts = 0;
};

struct RoundRecord {
  std::string code;                        // bytes the round started from
  rules::AccessibilityReport report;       // optimization report on `code`
  std::vector<ReActRecord> blocks;         // one entry per affected block
  std::string post_hash;                   // hex hash of the patched bytes
  std::string post_code;                   // patched bytes (not serialized)
};

struct SessionConfig {
  rules::Ruleset optimize_ruleset = rules::Ruleset::kQ;
  rules::Ruleset eval_ruleset = rules::Ruleset::kA;
  bool allow_same_ruleset = false;
  int max_rounds = 3;
  std::string path = "generated.html";  // drives segmentation and parsing
  prompts::PromptOptions options;       // refinement prompt feature switches
  const prompts::ExemplarLibrary* exemplars = nullptr;  // for the examples section
};

// Either a file description to generate code from, or existing code to
// refine directly (skips the generation step).
struct SessionInput {
  std::string summary;
  std::string code;  // when nonempty, used as the initial code
};

struct RefinementSession {
  SessionConfig config;
  std::string summary;
  std::string generator_id;
  std::string optimizer_id;
  std::string initial_code;
  metrics::RateSummary initial_rate;  // under the evaluation ruleset
  std::vector<RoundRecord> rounds;
  SessionStatus status = SessionStatus::kError;
  std::string error;
  std::string final_code;
  metrics::RateSummary final_rate;
};

// Parses `code` by path extension (.css = bare stylesheet) and evaluates it.
rules::AccessibilityReport evaluate_code(const std::string& code,
                                         const std::string& path,
                                         rules::Ruleset rs);

// Clean generation from the summary: the naive prompt, no accessibility text.
std::string initial_generate(const std::string& summary,
                             gateway::TextBackend& generator);

// One report+fix round. Reports under the optimization ruleset, groups
// counted findings by block, sends one refinement call per affected block,
// patches accepted replacements back in place. Malformed replies get one
// retry, then the block keeps its previous content.
RoundRecord optimize_round(const std::string& code,
                           const RefinementSession& session,
                           gateway::TextBackend& optimizer);

// Full loop: optional generation, then rounds until the code stops changing
// (byte equality) or max_rounds is hit. Same optimization and evaluation
// ruleset without the override flag is a configuration error raised before
// any backend call.
RefinementSession run(const SessionInput& input, gateway::TextBackend& generator,
                      gateway::TextBackend& optimizer, const SessionConfig& config);

struct StrategyResult {
  std::string code;
  metrics::RateSummary rate;
};

// Single-shot baselines. naive/zero-shot/few-shot send one generation;
// self-criticism adds exactly one review round. few-shot embeds the exemplar
// library of the evaluation ruleset's counterpart catalog, which the caller
// supplies. feeda11y is only reachable through run().
StrategyResult run_strategy(const std::string& summary, prompts::Strategy strategy,
                            gateway::TextBackend& backend, rules::Ruleset eval_ruleset,
                            const prompts::ExemplarLibrary* counterpart_exemplars,
                            const std::string& path = "generated.html");

// Last html/css/untagged fence in a model reply, else the trimmed reply.
std::string extract_code_reply(const std::string& response);

nlohmann::json session_to_json(const RefinementSession& session);

}  // namespace a11y::refine
