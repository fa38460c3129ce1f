#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a11y/color.hpp"
#include "a11y/css.hpp"
#include "a11y/dom.hpp"

namespace a11y::style {

// Winning declaration for one property on one element, with enough
// provenance to point a finding at the exact source bytes.
struct PropertyValue {
  std::string value;
  SourceSpan value_span;
  css::Stylesheet::Origin origin = css::Stylesheet::Origin::kStyleElement;
  int sheet_index = -1;
  int block_index = -1;
  int decl_index = -1;
  bool inherited = false;  // taken from an ancestor, not declared here
};

struct ResolvedStyle {
  std::map<std::string, PropertyValue> properties;

  const PropertyValue* get(const std::string& name) const {
    auto it = properties.find(name);
    return it == properties.end() ? nullptr : &it->second;
  }
};

// Cascade: inline style attribute beats sheet rules; among sheet rules higher
// specificity wins, then later source position. Only color, font-size and
// font-weight inherit.
class StyleResolver {
 public:
  explicit StyleResolver(const dom::Document& doc);

  const ResolvedStyle& resolve(int doc_index);

  // display:none / visibility:hidden / hidden attr / aria-hidden="true" on
  // the element or any ancestor.
  bool is_visible(int doc_index);

  // Nearest self-or-ancestor background-color, compositing translucent
  // layers onto the first opaque one. nullopt when nothing declares one.
  std::optional<Rgba> effective_background(int doc_index);

  // Resolved (possibly inherited) color; translucent values are composited
  // onto the effective background and fail when there is none.
  std::optional<Rgba> effective_foreground(int doc_index);

  // Computed font size in px, from px/pt/em/rem/% or a size keyword.
  std::optional<double> font_size_px(int doc_index);
  int font_weight(int doc_index);  // 400 when unstated/unparseable

  // >= 24px, or >= 18.66px at weight >= 700.
  bool is_large_text(int doc_index);

  static bool matches(const css::SimpleSelectorChain& chain, const dom::Document& doc,
                      const dom::Element& el);

 private:
  const dom::Document& doc_;
  std::map<int, ResolvedStyle> cache_;
};

// Parses "12px" / "1.5em" / "small" etc. to a px count. parent_px feeds em/%.
std::optional<double> font_size_to_px(const std::string& value, double parent_px);

int parse_font_weight(const std::string& value);

}  // namespace a11y::style
