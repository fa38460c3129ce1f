#include "a11y/refine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "a11y/core.hpp"
#include "a11y/css.hpp"
#include "a11y/dom.hpp"
#include "a11y/oracle.hpp"
#include "a11y/segmenter.hpp"
#include "a11y/style_resolver.hpp"
#include "a11y/text_util.hpp"

namespace a11y::refine {

namespace {

bool has_suffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string hash_hex(std::string_view bytes) { return fnv1a64_hex(bytes); }

std::string element_label(const dom::Element& el) {
  std::string out = el.tag;
  if (auto id = el.attr("id"); id && !id->empty()) out += "#" + std::string(*id);
  if (auto cls = el.attr("class")) {
    for (const auto& token : split_ws(*cls)) out += "." + token;
  }
  return out;
}

// "tag#id.class: prop: value; prop: value" lines for every element a finding
// points at, so the optimizer sees the styles it must respect.
std::string style_properties_for(const dom::Document& doc,
                                 const std::set<long>& keys) {
  style::StyleResolver resolver(doc);
  std::string out;
  for (long key : keys) {
    if (key < 0 || key >= static_cast<long>(doc.elements.size())) continue;
    const auto& el = doc.elements[key];
    const auto& resolved = resolver.resolve(static_cast<int>(key));
    std::string line = element_label(el) + ":";
    bool any = false;
    for (const auto& [prop, pv] : resolved.properties) {
      line += (any ? "; " : " ") + prop + ": " + pv.value;
      any = true;
    }
    if (!any) line += " no declared style";
    out += line + "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

bool looks_like_html(const std::string& text) {
  dom::Document doc;
  try {
    doc = dom::parse_html(text, "candidate.html");
  } catch (const ParseError&) {
    return false;
  }
  for (const auto& el : doc.elements)
    if (!el.synthetic) return true;
  return false;
}

bool looks_like_css(const std::string& text) {
  auto sheet = css::parse_css(text);
  for (const auto& block : sheet.blocks)
    if (!block.declarations.empty()) return true;
  return false;
}

// The replacement for a block must still be the kind of code the block held,
// otherwise the round keeps the previous content.
bool action_parses(const std::string& action, const std::string& kind) {
  if (trim_copy(action).empty()) return false;
  if (kind == "css-declaration-block") return looks_like_css(action);
  return looks_like_html(action);
}

// Model text around the code fence: thought before, observation after.
std::pair<std::string, std::string> split_around_fences(const std::string& text) {
  auto first = text.find("```");
  if (first == std::string::npos) return {trim_copy(text), ""};
  auto last = text.rfind("```");
  std::string thought = trim_copy(text.substr(0, first));
  std::string observation;
  if (last != std::string::npos && last > first) {
    auto tail_start = text.find('\n', last);
    if (tail_start != std::string::npos)
      observation = trim_copy(text.substr(tail_start + 1));
  }
  return {thought, observation};
}

nlohmann::json rate_to_json(const metrics::RateSummary& rate) {
  nlohmann::json j{{"numerator", rate.numerator}, {"denominator", rate.denominator}};
  if (auto r = rate.rate())
    j["rate"] = *r;
  else
    j["rate"] = nullptr;
  return j;
}

}  // namespace

std::string status_name(SessionStatus status) {
  switch (status) {
    case SessionStatus::kConverged: return "converged";
    case SessionStatus::kMaxRounds: return "max-rounds";
    case SessionStatus::kError: return "error";
  }
  return "error";
}

rules::AccessibilityReport evaluate_code(const std::string& code,
                                         const std::string& path,
                                         rules::Ruleset rs) {
  if (has_suffix(path, ".css")) return rules::evaluate(rules::css_document(code, path), rs);
  return rules::evaluate(dom::parse_html(code, path), rs);
}

std::string extract_code_reply(const std::string& response) {
  auto fences = gateway::extract_fences(response);
  for (auto it = fences.rbegin(); it != fences.rend(); ++it) {
    if (it->info == "html" || it->info == "css" || it->info.empty())
      return it->body;
  }
  return trim_copy(response);
}

std::string initial_generate(const std::string& summary,
                             gateway::TextBackend& generator) {
  if (trim_copy(summary).empty())
    throw ConfigError("initial_generate: empty summary");
  auto messages = prompts::build_prompt(prompts::Strategy::kNaive, summary,
                                        prompts::PromptOptions::all_off(), nullptr);
  gateway::GenerationRequest request;
  request.messages = std::move(messages);
  try {
    return extract_code_reply(generator.generate(request));
  } catch (const BackendError& e) {
    throw BackendError(std::string("initial generation failed: ") + e.what(),
                       e.retriable());
  }
}

RoundRecord optimize_round(const std::string& code,
                           const RefinementSession& session,
                           gateway::TextBackend& optimizer) {
  const auto& config = session.config;
  auto blocks = seg::segment(config.path, code);
  if (blocks.empty()) throw StructureError("optimize_round: nothing to segment");

  RoundRecord round;
  round.code = code;
  round.report = evaluate_code(code, config.path, config.optimize_ruleset);

  // counted findings only; warnings and passes are not fix targets
  std::map<size_t, std::vector<rules::Finding>> by_block;
  for (const auto& f : round.report.findings) {
    if (!round.report.counted(f)) continue;
    size_t idx = blocks.size() - 1;
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (f.span.start < blocks[b].span.end) {
        idx = b;
        break;
      }
    }
    by_block[idx].push_back(f);
  }

  bool html_file = !has_suffix(config.path, ".css");
  std::optional<dom::Document> doc;
  if (html_file && !by_block.empty()) doc = dom::parse_html(code, config.path);

  for (auto& [idx, findings] : by_block) {
    auto& block = blocks[idx];

    prompts::ReactContext ctx;
    ctx.summary = session.summary;
    ctx.language = block.kind == "css-declaration-block" ? "css" : "html";
    ctx.code = block.content;
    std::set<std::string> rule_ids;
    std::set<long> element_keys;
    for (const auto& f : findings) {
      rules::Finding local = f;
      local.span.start = f.span.start - block.span.start;
      local.span.end = std::min(f.span.end, block.span.end) - block.span.start;
      ctx.findings.push_back(std::move(local));
      rule_ids.insert(f.rule_id);
      if (f.key >= 0) element_keys.insert(f.key);
    }
    for (const auto& id : rule_ids) {
      const auto* rule = rules::find_rule(config.optimize_ruleset, id);
      if (!rule) continue;
      ctx.guideline_descriptions.push_back(id + ": " + rule->description);
      std::string techniques = rule->wcag_techniques.empty()
                                   ? "no mapped technique"
                                   : "";
      for (size_t t = 0; t < rule->wcag_techniques.size(); ++t)
        techniques += (t ? ", " : "") + rule->wcag_techniques[t];
      ctx.testing_rules.push_back(id + ": " + techniques);
      if (config.exemplars) {
        if (const auto* ex = config.exemplars->find(id)) ctx.examples.push_back(*ex);
      }
    }
    if (doc) ctx.style_properties = style_properties_for(*doc, element_keys);

    auto messages = prompts::build_react_prompt(ctx, config.options);
    gateway::GenerationRequest request;
    request.messages = messages;

    ReActRecord rec;
    rec.block_id = block.id;
    rec.prompt_fingerprint = gateway::fingerprint_hex(messages);
    for (int attempt = 0; attempt < 2 && !rec.patched; ++attempt) {
      rec.attempts = attempt + 1;
      std::string response = optimizer.generate(request);
      std::string action = extract_code_reply(response);
      if (!action_parses(action, block.kind)) continue;  // one retry, then give up
      auto [thought, observation] = split_around_fences(response);
      rec.thought = std::move(thought);
      rec.observation = std::move(observation);
      rec.action = std::move(action);
      rec.patched = true;
    }
    if (rec.patched) block.content = rec.action;
    round.blocks.push_back(std::move(rec));
  }

  round.post_code = seg::reassemble(blocks);
  round.post_hash = hash_hex(round.post_code);

  // A block's findings count as resolved when no counted finding with the
  // same rule and element path survives the re-scan.
  if (!round.blocks.empty()) {
    auto post_report =
        evaluate_code(round.post_code, config.path, config.optimize_ruleset);
    std::set<std::pair<std::string, std::string>> remaining;
    for (const auto& f : post_report.findings)
      if (post_report.counted(f)) remaining.insert({f.rule_id, f.path});
    size_t rec_idx = 0;
    for (const auto& [idx, findings] : by_block) {
      auto& rec = round.blocks[rec_idx++];
      rec.resolved = true;
      for (const auto& f : findings) {
        if (remaining.count({f.rule_id, f.path})) {
          rec.resolved = false;
          break;
        }
      }
    }
  }
  return round;
}

RefinementSession run(const SessionInput& input, gateway::TextBackend& generator,
                      gateway::TextBackend& optimizer, const SessionConfig& config) {
  if (config.optimize_ruleset == config.eval_ruleset && !config.allow_same_ruleset)
    throw ConfigError(
        "optimization and evaluation use the same ruleset; pass the "
        "same-ruleset override to run an in-tool session");
  if (config.max_rounds <= 0) throw ConfigError("max_rounds must be positive");
  if (input.code.empty() && trim_copy(input.summary).empty())
    throw ConfigError("refinement needs a summary or initial code");

  RefinementSession session;
  session.config = config;
  session.summary = input.summary;
  session.generator_id = generator.id();
  session.optimizer_id = optimizer.id();

  try {
    session.initial_code =
        input.code.empty() ? initial_generate(input.summary, generator) : input.code;
    if (trim_copy(session.initial_code).empty())
      throw BackendError("generator returned empty code");
    session.initial_rate = metrics::summarize(
        evaluate_code(session.initial_code, config.path, config.eval_ruleset));

    std::string code = session.initial_code;
    session.status = SessionStatus::kMaxRounds;
    for (int i = 0; i < config.max_rounds; ++i) {
      auto round = optimize_round(code, session, optimizer);
      bool converged = round.post_code == code;
      code = round.post_code;
      session.rounds.push_back(std::move(round));
      if (converged) {
        session.status = SessionStatus::kConverged;
        break;
      }
    }
    session.final_code = code;
    session.final_rate = metrics::summarize(
        evaluate_code(session.final_code, config.path, config.eval_ruleset));
  } catch (const BackendError& e) {
    session.status = SessionStatus::kError;
    session.error = e.what();
  } catch (const ParseError& e) {
    session.status = SessionStatus::kError;
    session.error = e.what();
  }
  return session;
}

StrategyResult run_strategy(const std::string& summary, prompts::Strategy strategy,
                            gateway::TextBackend& backend, rules::Ruleset eval_ruleset,
                            const prompts::ExemplarLibrary* counterpart_exemplars,
                            const std::string& path) {
  if (strategy == prompts::Strategy::kFeedA11y)
    throw ConfigError("the feeda11y strategy runs through the refinement loop");

  const prompts::ExemplarLibrary* exemplars = nullptr;
  if (strategy == prompts::Strategy::kFewShot) {
    if (!counterpart_exemplars)
      throw ConfigError("few-shot needs the counterpart catalog's exemplars");
    exemplars = counterpart_exemplars;
  }

  gateway::GenerationRequest request;
  request.messages = prompts::build_prompt(strategy, summary, {}, exemplars);
  std::string code = extract_code_reply(backend.generate(request));

  if (strategy == prompts::Strategy::kSelfCriticism) {
    gateway::GenerationRequest review;
    review.messages = prompts::build_review_prompt(code);
    code = extract_code_reply(backend.generate(review));
  }

  StrategyResult result;
  result.code = code;
  result.rate = metrics::summarize(evaluate_code(code, path, eval_ruleset));
  return result;
}

nlohmann::json session_to_json(const RefinementSession& session) {
  nlohmann::json j;
  j["summary"] = session.summary;
  j["generator"] = session.generator_id;
  j["optimizer"] = session.optimizer_id;
  j["optimize_ruleset"] = rules::ruleset_name(session.config.optimize_ruleset);
  j["eval_ruleset"] = rules::ruleset_name(session.config.eval_ruleset);
  j["allow_same_ruleset"] = session.config.allow_same_ruleset;
  j["max_rounds"] = session.config.max_rounds;
  j["path"] = session.config.path;
  j["prompt_options"] = {
      {"accessibility_instructions", session.config.options.accessibility_instructions},
      {"guideline_descriptions", session.config.options.guideline_descriptions},
      {"code_examples", session.config.options.code_examples},
      {"testing_rules", session.config.options.testing_rules},
      {"style_properties", session.config.options.style_properties}};
  char tmpl[17];
  std::snprintf(tmpl, sizeof tmpl, "%016llx",
                static_cast<unsigned long long>(prompts::template_hash()));
  j["template_hash"] = tmpl;
  j["initial_code"] = session.initial_code;
  j["initial_rate"] = rate_to_json(session.initial_rate);
  auto rounds = nlohmann::json::array();
  for (const auto& round : session.rounds) {
    auto blocks = nlohmann::json::array();
    for (const auto& rec : round.blocks) {
      blocks.push_back({{"block_id", rec.block_id},
                        {"prompt_fingerprint", rec.prompt_fingerprint},
                        {"thought", rec.thought},
                        {"action", rec.action},
                        {"observation", rec.observation},
                        {"patched", rec.patched},
                        {"resolved", rec.resolved},
                        {"attempts", rec.attempts}});
    }
    rounds.push_back({{"code", round.code},
                      {"report", rules::report_to_json(round.report)},
                      {"blocks", std::move(blocks)},
                      {"post_hash", round.post_hash}});
  }
  j["rounds"] = std::move(rounds);
  j["status"] = status_name(session.status);
  j["error"] = session.error;
  j["final_code"] = session.final_code;
  j["final_rate"] = rate_to_json(session.final_rate);
  return j;
}

}  // namespace a11y::refine
