#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/core.hpp"
#include "a11y/css.hpp"

namespace a11y::dom {

struct Attribute {
  std::string name;   // lowercased; first occurrence wins on duplicates
  std::string value;  // raw bytes, entities left undecoded
  SourceSpan name_span;
  SourceSpan value_span;  // excludes quotes; empty for boolean attributes
  bool has_value = false;
};

struct NodeRef {
  enum class Kind { kElement, kText };
  Kind kind = Kind::kElement;
  size_t index = 0;  // into Document::elements or Document::texts
};

struct TextNode {
  SourceSpan span;  // raw text bytes, entities undecoded
};

struct Element {
  std::string tag;  // lowercased; "#document" only for the synthetic root
  std::vector<Attribute> attributes;
  std::vector<NodeRef> children;
  SourceSpan span;           // open tag start through close tag end
  SourceSpan open_tag_span;  // "<tag ...>" only
  int doc_index = 0;         // document-order index; equals arena position
  int parent = -1;           // doc_index of parent, -1 for the root
  bool synthetic = false;

  const Attribute* find_attr(std::string_view name) const;
  bool has_attr(std::string_view name) const;
  // Raw attribute value (undecoded). Empty optional when absent.
  std::optional<std::string_view> attr(std::string_view name) const;
};

struct StylesheetLink {
  std::string href;
  int owner_element;  // doc_index of the <link>
  bool resolved = false;
};

struct Document {
  std::string source;
  std::string path;
  std::vector<Element> elements;  // arena; [0] is the synthetic root
  std::vector<TextNode> texts;
  std::vector<css::Stylesheet> stylesheets;  // document order, incl. inline
  std::vector<SourceSpan> inline_scripts;
  std::vector<StylesheetLink> stylesheet_links;
  std::vector<std::string> unresolved_refs;

  const Element& root() const { return elements[0]; }
  const Element& element(int doc_index) const { return elements[doc_index]; }
  size_t element_count() const { return elements.size(); }

  std::string_view text_of(const TextNode& node) const {
    return std::string_view(source).substr(node.span.start,
                                           node.span.length());
  }
  std::string_view slice(const SourceSpan& span) const {
    return std::string_view(source).substr(span.start, span.length());
  }

  // Decoded, whitespace-collapsed attribute value.
  std::optional<std::string> attr_decoded(const Element& el,
                                          std::string_view name) const;

  // First element with the given tag in document order, or nullptr.
  const Element* first_of_tag(std::string_view tag) const;

  // CSS-like locator path, e.g. "html > body > p:nth-of-type(2)".
  std::string css_path(const Element& el) const;
};

// Error-tolerant HTML parse. Recovery always yields a tree; the only thrown
// error is ParseError for undecodable bytes (invalid UTF-8 while the document
// does not declare a different charset).
Document parse_html(std::string_view source, std::string_view path = "");

// Reconstructs the exact source bytes from the tree (spans plus gaps).
std::string serialize(const Document& doc);

// parse_html plus stylesheet resolution: reads the file, attaches external
// stylesheets referenced by <link rel="stylesheet"> relative to the document
// path when they exist, and records unresolved references otherwise.
Document load_document(const std::string& path);

// Raw text content of an element (direct + descendant text node bytes).
std::string raw_text_content(const Document& doc, const Element& el);

extern const char* const kVoidElements[];
bool is_void_element(std::string_view tag);

}  // namespace a11y::dom
