#include "a11y/style_resolver.hpp"

#include <algorithm>

#include "a11y/text_util.hpp"

namespace a11y::style {
namespace {

std::vector<std::string> class_list(const dom::Element& el) {
  auto* attr = el.find_attr("class");
  if (!attr) return {};
  return split_ws(attr->value);
}

bool compound_matches(const css::CompoundSelector& c, const dom::Element& el) {
  if (!c.tag.empty() && !iequals(c.tag, el.tag)) return false;
  if (!c.id.empty()) {
    auto* id = el.find_attr("id");
    if (!id || id->value != c.id) return false;
  }
  if (!c.classes.empty()) {
    auto classes = class_list(el);
    for (const auto& want : c.classes) {
      if (std::find(classes.begin(), classes.end(), want) == classes.end()) return false;
    }
  }
  return true;
}

struct Candidate {
  bool important = false;
  int origin_rank = 0;  // 1 for the style attribute
  css::Specificity spec;
  int sheet = -1;
  int block = -1;
  int decl = -1;

  bool beats(const Candidate& other) const {
    if (important != other.important) return important;
    if (origin_rank != other.origin_rank) return origin_rank > other.origin_rank;
    if (spec != other.spec) return other.spec < spec;
    if (sheet != other.sheet) return sheet > other.sheet;
    if (block != other.block) return block > other.block;
    return decl > other.decl;
  }
};

// Splits a shorthand value on top-level whitespace (keeps "rgb(1, 2, 3)"
// together).
std::vector<std::string> top_level_tokens(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : value) {
    if (c == '(') ++depth;
    if (c == ')') depth = std::max(0, depth - 1);
    if (depth == 0 && is_ascii_space(c)) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// background-color, falling back to the color token of a background
// shorthand. Last parseable token wins (final background layer).
std::optional<Rgba> background_of(const ResolvedStyle& style) {
  if (const auto* pv = style.get("background-color")) {
    return parse_color(pv->value);
  }
  if (const auto* pv = style.get("background")) {
    std::optional<Rgba> found;
    for (const auto& token : top_level_tokens(pv->value)) {
      if (auto c = parse_color(token)) found = c;
    }
    return found;
  }
  return std::nullopt;
}

bool first_token_is(const PropertyValue* pv, std::string_view word) {
  if (!pv) return false;
  auto tokens = split_ws(pv->value);
  return !tokens.empty() && iequals(tokens[0], word);
}

}  // namespace

bool StyleResolver::matches(const css::SimpleSelectorChain& chain, const dom::Document& doc,
                            const dom::Element& el) {
  if (!chain.supported || chain.compounds.empty()) return false;
  if (!compound_matches(chain.compounds.back(), el)) return false;
  int need = static_cast<int>(chain.compounds.size()) - 2;
  int anc = el.parent;
  while (need >= 0 && anc > 0) {
    if (compound_matches(chain.compounds[need], doc.elements[anc])) --need;
    anc = doc.elements[anc].parent;
  }
  return need < 0;
}

StyleResolver::StyleResolver(const dom::Document& doc) : doc_(doc) {}

const ResolvedStyle& StyleResolver::resolve(int doc_index) {
  auto hit = cache_.find(doc_index);
  if (hit != cache_.end()) return hit->second;

  ResolvedStyle style;
  if (doc_index <= 0 || doc_index >= static_cast<int>(doc_.elements.size())) {
    return cache_.emplace(doc_index, std::move(style)).first->second;
  }
  const auto& el = doc_.elements[doc_index];

  std::map<std::string, Candidate> winners;
  auto consider = [&](const std::string& prop, const Candidate& cand) {
    auto it = winners.find(prop);
    if (it == winners.end() || cand.beats(it->second)) winners[prop] = cand;
  };

  for (int si = 0; si < static_cast<int>(doc_.stylesheets.size()); ++si) {
    const auto& sheet = doc_.stylesheets[si];
    if (sheet.origin == css::Stylesheet::Origin::kInlineAttribute) {
      if (sheet.owner_element != doc_index) continue;
      for (int bi = 0; bi < static_cast<int>(sheet.blocks.size()); ++bi) {
        const auto& decls = sheet.blocks[bi].declarations;
        for (int di = 0; di < static_cast<int>(decls.size()); ++di) {
          consider(decls[di].property, Candidate{decls[di].important, 1, {}, si, bi, di});
        }
      }
      continue;
    }
    for (int bi = 0; bi < static_cast<int>(sheet.blocks.size()); ++bi) {
      const auto& block = sheet.blocks[bi];
      if (block.at_rule || block.parsed_selectors.empty()) continue;
      bool any = false;
      css::Specificity best{};
      for (const auto& chain : block.parsed_selectors) {
        if (!matches(chain, doc_, el)) continue;
        auto spec = css::specificity(chain);
        if (!any || best < spec) best = spec;
        any = true;
      }
      if (!any) continue;
      for (int di = 0; di < static_cast<int>(block.declarations.size()); ++di) {
        consider(block.declarations[di].property,
                 Candidate{block.declarations[di].important, 0, best, si, bi, di});
      }
    }
  }

  for (const auto& [prop, cand] : winners) {
    const auto& decl = doc_.stylesheets[cand.sheet].blocks[cand.block].declarations[cand.decl];
    style.properties[prop] =
        PropertyValue{decl.value,     decl.value_span, doc_.stylesheets[cand.sheet].origin,
                      cand.sheet,     cand.block,      cand.decl,
                      false};
  }

  // std::map keeps references stable, so the recursive parent resolve below
  // cannot invalidate `slot`.
  auto& slot = cache_.emplace(doc_index, std::move(style)).first->second;
  if (el.parent > 0) {
    const ResolvedStyle& up = resolve(el.parent);
    for (const char* prop : {"color", "font-size", "font-weight"}) {
      if (slot.properties.count(prop)) continue;
      if (const auto* pv = up.get(prop)) {
        PropertyValue copy = *pv;
        copy.inherited = true;
        slot.properties[prop] = copy;
      }
    }
  }
  return slot;
}

bool StyleResolver::is_visible(int doc_index) {
  int node = doc_index;
  while (node > 0 && node < static_cast<int>(doc_.elements.size())) {
    const auto& el = doc_.elements[node];
    if (el.has_attr("hidden")) return false;
    if (auto aria = el.attr("aria-hidden")) {
      if (iequals(trim_copy(*aria), "true")) return false;
    }
    const ResolvedStyle& style = resolve(node);
    if (first_token_is(style.get("display"), "none")) return false;
    if (first_token_is(style.get("visibility"), "hidden")) return false;
    node = el.parent;
  }
  return true;
}

std::optional<Rgba> StyleResolver::effective_background(int doc_index) {
  std::vector<Rgba> layers;  // topmost first
  int node = doc_index;
  while (node > 0 && node < static_cast<int>(doc_.elements.size())) {
    if (auto color = background_of(resolve(node))) {
      if (color->a >= 1.0) {
        Rgba result = *color;
        for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
          result = composite_over(*it, result);
        }
        return result;
      }
      if (color->a > 0.0) layers.push_back(*color);
    }
    node = doc_.elements[node].parent;
  }
  return std::nullopt;  // nothing opaque underneath, can't tell
}

std::optional<Rgba> StyleResolver::effective_foreground(int doc_index) {
  const auto* pv = resolve(doc_index).get("color");
  if (!pv) return std::nullopt;
  auto color = parse_color(pv->value);
  if (!color) return std::nullopt;
  if (color->a >= 1.0) return color;
  auto bg = effective_background(doc_index);
  if (!bg) return std::nullopt;
  return composite_over(*color, *bg);
}

std::optional<double> StyleResolver::font_size_px(int doc_index) {
  if (doc_index <= 0 || doc_index >= static_cast<int>(doc_.elements.size())) return 16.0;
  const auto* pv = resolve(doc_index).get("font-size");
  double parent_px = font_size_px(doc_.elements[doc_index].parent).value_or(16.0);
  if (!pv || pv->inherited) {
    // inherited entries restate an ancestor's raw value; the recursive parent
    // size already reflects it
    return parent_px;
  }
  auto px = font_size_to_px(pv->value, parent_px);
  return px ? px : parent_px;
}

int StyleResolver::font_weight(int doc_index) {
  const auto* pv = resolve(doc_index).get("font-weight");
  if (!pv) return 400;
  return parse_font_weight(pv->value);
}

bool StyleResolver::is_large_text(int doc_index) {
  double px = font_size_px(doc_index).value_or(16.0);
  if (px >= 24.0) return true;
  return px >= 18.66 && font_weight(doc_index) >= 700;
}

std::optional<double> font_size_to_px(const std::string& value, double parent_px) {
  std::string v = to_lower_ascii(trim_copy(value));
  if (v.empty()) return std::nullopt;

  static const std::map<std::string, double> kKeywords = {
      {"xx-small", 9.0}, {"x-small", 10.0}, {"small", 13.0},   {"medium", 16.0},
      {"large", 18.0},   {"x-large", 24.0}, {"xx-large", 32.0}};
  if (auto it = kKeywords.find(v); it != kKeywords.end()) return it->second;

  size_t pos = 0;
  double num = 0;
  try {
    num = std::stod(v, &pos);
  } catch (...) {
    return std::nullopt;
  }
  std::string unit = trim_copy(std::string_view(v).substr(pos));
  if (num < 0) return std::nullopt;
  if (unit == "px") return num;
  if (unit == "pt") return num * 4.0 / 3.0;
  if (unit == "pc") return num * 16.0;
  if (unit == "em") return num * parent_px;
  if (unit == "rem") return num * 16.0;
  if (unit == "%") return num * parent_px / 100.0;
  if (unit == "in") return num * 96.0;
  if (unit == "cm") return num * 96.0 / 2.54;
  if (unit == "mm") return num * 96.0 / 25.4;
  return std::nullopt;
}

int parse_font_weight(const std::string& value) {
  std::string v = to_lower_ascii(trim_copy(value));
  if (v == "bold" || v == "bolder") return 700;
  if (v == "lighter") return 300;
  if (v == "normal") return 400;
  try {
    size_t pos = 0;
    int num = std::stoi(v, &pos);
    if (pos == v.size() && num >= 1 && num <= 1000) return num;
  } catch (...) {
  }
  return 400;
}

}  // namespace a11y::style
