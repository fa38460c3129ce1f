#pragma once

#include <string>
#include <vector>

#include "a11y/rules.hpp"

namespace a11y::rules {

// A declaration block whose bytes live in the evaluated document's own file.
// Blocks from linked external stylesheets are styled through the resolver but
// reported when the stylesheet file itself is scanned.
struct BlockRef {
  int sheet = 0;
  int block = 0;
  int ordinal = 0;  // census key is -(1 + ordinal)
};

struct RuleContext {
  const dom::Document& doc;
  style::StyleResolver& styles;
  Ruleset ruleset;
  AccessibilityReport& report;
  std::vector<BlockRef> blocks;  // in-file declaration blocks, document order

  void applicable(const std::string& rule_id, long key) { report.census[rule_id].insert(key); }

  void fail(const std::string& rule_id, const dom::Element& el, std::string message,
            nlohmann::json evidence = nlohmann::json::object());
  void fail_block(const std::string& rule_id, const BlockRef& ref, std::string message,
                  nlohmann::json evidence = nlohmann::json::object());

  const css::DeclarationBlock& block(const BlockRef& ref) const {
    return doc.stylesheets[ref.sheet].blocks[ref.block];
  }
  std::string block_path(const BlockRef& ref) const;
  long block_key(const BlockRef& ref) const { return -static_cast<long>(1 + ref.ordinal); }
};

using CheckFn = void (*)(RuleContext&);

struct RegisteredRule {
  Rule meta;
  CheckFn check = nullptr;  // null for catalogued-but-unimplemented rules
};

const std::vector<RegisteredRule>& registry(Ruleset rs);
std::vector<RegisteredRule> make_registry_a();
std::vector<RegisteredRule> make_registry_q();

// Helpers shared by both rulesets.
std::string role_token(const dom::Element& el);  // first role token, lowercased
bool has_tabbable_inside(const dom::Document& doc, const dom::Element& el);  // self included
const dom::Element* associated_label(const dom::Document& doc, const dom::Element& control);
bool has_label_association(const dom::Document& doc, const dom::Element& control);
bool is_labelable_control(const dom::Element& el);
// First non-whitespace text position in the label, excluding nested controls.
std::optional<size_t> label_text_position(const dom::Document& doc, const dom::Element& label);
// td/th cells of this table, not descending into nested tables.
std::vector<const dom::Element*> table_cells(const dom::Document& doc, const dom::Element& table);
const dom::Element* enclosing(const dom::Document& doc, const dom::Element& el,
                              std::string_view tag);
// True when the link's content is exactly one img and no non-whitespace text.
bool is_image_only_link(const dom::Document& doc, const dom::Element& link);
// Shared label-position convention: checkbox/radio labels follow the control,
// text-entry labels precede it. Returns the message for a misplaced label.
std::optional<std::string> label_position_defect(const dom::Document& doc,
                                                 const dom::Element& input);

}  // namespace a11y::rules
