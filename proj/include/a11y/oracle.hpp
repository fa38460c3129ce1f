#pragma once

#include <set>
#include <string>
#include <vector>

#include "a11y/gateway.hpp"
#include "a11y/rules.hpp"

namespace a11y::gateway {

// Rules oracle_rewrite can fix deterministically.
const std::set<std::string>& oracle_supported_rules();

// Applies one deterministic fix per supported finding; unsupported findings
// pass through untouched. Spans inside `findings` are relative to `code`.
// Each fix first re-checks that the defect is still present, so applying the
// result to the same findings again is a no-op. Never edits bytes outside
// the spans of findings it acts on (plus pure insertions at their edges).
std::string oracle_rewrite(const std::string& code,
                           const std::vector<rules::Finding>& findings);

// Non-model backend: reads the code block and findings out of a rendered
// refinement prompt (last ```json fence = findings, last ```html/```css
// fence = code), rewrites, and answers with the fixed code fenced the same
// way. Makes the whole loop runnable and recordable without a model.
class OracleBackend : public TextBackend {
 public:
  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return "oracle"; }
};

// Fence helpers shared with the refinement loop's response handling.
struct FencedBlock {
  std::string info;  // language tag, may be empty
  std::string body;
};
std::vector<FencedBlock> extract_fences(std::string_view text);

}  // namespace a11y::gateway
