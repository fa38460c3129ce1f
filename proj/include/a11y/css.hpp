#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/core.hpp"

namespace a11y::css {

// One `property: value` pair. Spans are absolute offsets into the file the
// declaration came from (a .css file or the HTML file for embedded/inline
// styles), which lets later passes patch values in place.
struct Declaration {
  std::string property;  // lowercased
  std::string value;     // trimmed, raw; "!important" stripped into the flag
  SourceSpan value_span;
  bool important = false;
};

// div#main.note.wide -> tag "div", id "main", classes {note, wide}.
struct CompoundSelector {
  std::string tag;  // empty matches any tag ("*" parses to empty)
  std::string id;
  std::vector<std::string> classes;
};

// Whitespace-separated compounds, descendant combinator only. The last
// compound is the subject. Selectors using any other syntax are kept but
// marked unsupported and never match.
struct SimpleSelectorChain {
  std::vector<CompoundSelector> compounds;
  bool supported = false;
  std::string text;
};

struct Specificity {
  int ids = 0;
  int classes = 0;
  int tags = 0;
  auto operator<=>(const Specificity&) const = default;
};

Specificity specificity(const SimpleSelectorChain& chain);

struct DeclarationBlock {
  std::string selector_text;  // raw selector list (or at-rule prelude)
  std::vector<SimpleSelectorChain> parsed_selectors;  // empty for at-rules
  std::vector<Declaration> declarations;
  SourceSpan span;  // whole block including selector and braces
  bool at_rule = false;
};

struct Stylesheet {
  enum class Origin { kExternalFile, kStyleElement, kInlineAttribute };
  Origin origin = Origin::kExternalFile;
  std::string source_path;  // file path for external sheets
  int owner_element = -1;   // doc_index of the owning element, when embedded
  std::vector<DeclarationBlock> blocks;
};

// Parses a selector list ("a, nav .item") into chains, one per comma part.
std::vector<SimpleSelectorChain> parse_selector_list(std::string_view text);

// Parses CSS source into declaration blocks. `base_offset` shifts every span
// so embedded sheets carry offsets into their host file. Malformed input is
// kept: blocks that cannot be parsed become opaque at-rule-style blocks.
Stylesheet parse_css(std::string_view src,
                     Stylesheet::Origin origin = Stylesheet::Origin::kExternalFile,
                     size_t base_offset = 0);

// Parses the contents of a style="" attribute into declarations.
std::vector<Declaration> parse_inline_declarations(std::string_view src,
                                                   size_t base_offset);

}  // namespace a11y::css
