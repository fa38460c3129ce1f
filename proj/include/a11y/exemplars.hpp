#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/rules.hpp"

namespace a11y::prompts {

// One correct/counter snippet pair for a rule, used in few-shot prompts and
// as a behavioral self-check of the rule engine.
struct Exemplar {
  std::string rule_id;
  std::string description;
  std::string correct_code;
  std::string counter_code;
  std::string correct_path;
  std::string counter_path;
  bool verified = false;  // duality was machine-checked (implemented rules)
};

class ExemplarLibrary {
 public:
  // Loads <dir>/<ruleset name>/<rule_id>/{correct,counter}.{html,css} in
  // catalog order. Every implemented rule must ship a pair; rules without a
  // checker may ship one (kept unverified) or omit the directory entirely.
  // Implemented pairs are validated against the engine on load: the correct
  // snippet must yield zero findings of its rule and the counter at least
  // one. Throws ConfigError on missing or misbehaving fixtures.
  static ExemplarLibrary load(const std::filesystem::path& dir, rules::Ruleset rs);

  rules::Ruleset ruleset() const { return ruleset_; }
  const std::vector<Exemplar>& entries() const { return entries_; }
  const Exemplar* find(std::string_view rule_id) const;

 private:
  rules::Ruleset ruleset_ = rules::Ruleset::kA;
  std::vector<Exemplar> entries_;
};

// Findings of one rule in one fixture snippet (html or css chosen by
// extension). Exposed so tests can probe fixtures directly.
int fixture_findings(const std::filesystem::path& file, rules::Ruleset rs,
                     std::string_view rule_id);

}  // namespace a11y::prompts
