#include <algorithm>
#include <functional>

#include "a11y/text_util.hpp"
#include "rules_internal.hpp"

namespace a11y::rules {
namespace {

bool subtree_hidden(const dom::Element& el) {
  if (el.has_attr("hidden")) return true;
  if (auto aria = el.attr("aria-hidden")) {
    if (iequals(trim_copy(*aria), "true")) return true;
  }
  return false;
}

void collect_text(const dom::Document& doc, const dom::Element& el, bool include_img_alt,
                  std::string* out) {
  if (el.tag == "script" || el.tag == "style") return;
  for (const auto& child : el.children) {
    if (child.kind == dom::NodeRef::Kind::kText) {
      out->append(decode_entities(doc.text_of(doc.texts[child.index])));
      out->push_back(' ');
      continue;
    }
    const auto& sub = doc.elements[child.index];
    if (subtree_hidden(sub)) continue;
    if (include_img_alt && (sub.tag == "img" || sub.tag == "area")) {
      if (auto alt = sub.attr("alt")) {
        out->append(decode_entities(*alt));
        out->push_back(' ');
      }
    }
    collect_text(doc, sub, include_img_alt, out);
  }
}

}  // namespace

std::string visible_text(const dom::Document& doc, const dom::Element& el) {
  std::string raw;
  collect_text(doc, el, true, &raw);
  return collapse_ws(raw);
}

const dom::Element* find_by_id(const dom::Document& doc, std::string_view id) {
  if (id.empty()) return nullptr;
  for (const auto& el : doc.elements) {
    if (el.synthetic) continue;
    if (auto v = el.attr("id"); v && *v == id) return &el;
  }
  return nullptr;
}

namespace {

std::string labelledby_text(const dom::Document& doc, const dom::Element& el) {
  auto refs = el.attr("aria-labelledby");
  if (!refs) return "";
  std::string joined;
  for (const auto& token : split_ws(*refs)) {
    if (const auto* target = find_by_id(doc, token)) {
      joined += visible_text(doc, *target);
      joined.push_back(' ');
    }
  }
  return collapse_ws(joined);
}

std::string decoded_attr(const dom::Element& el, std::string_view name) {
  auto v = el.attr(name);
  return v ? collapse_ws(decode_entities(*v)) : "";
}

}  // namespace

std::string accessible_name(const dom::Document& doc, const dom::Element& el) {
  if (std::string by = labelledby_text(doc, el); !by.empty()) return by;
  if (std::string label = decoded_attr(el, "aria-label"); !label.empty()) return label;
  if (el.tag == "img" || el.tag == "area") {
    if (std::string alt = decoded_attr(el, "alt"); !alt.empty()) return alt;
  }
  if (el.tag == "input") {
    if (iequals(trim_copy(std::string(el.attr("type").value_or(""))), "image")) {
      if (std::string alt = decoded_attr(el, "alt"); !alt.empty()) return alt;
    }
  }
  if (std::string title = decoded_attr(el, "title"); !title.empty()) return title;
  return visible_text(doc, el);
}

std::string label_only_name(const dom::Document& doc, const dom::Element& el) {
  if (std::string by = labelledby_text(doc, el); !by.empty()) return by;
  if (std::string label = decoded_attr(el, "aria-label"); !label.empty()) return label;
  return decoded_attr(el, "title");
}

bool is_data_table(const dom::Document&, const dom::Element& el) {
  if (el.tag != "table") return false;
  std::string role = role_token(el);
  return role != "presentation" && role != "none";
}

bool is_tabbable(const dom::Element& el) {
  static const char* kControls[] = {"input", "button", "select", "textarea"};
  bool control = std::any_of(std::begin(kControls), std::end(kControls),
                             [&](const char* t) { return el.tag == t; });
  if (control && el.has_attr("disabled")) return false;
  if (auto t = el.attr("tabindex")) {
    try {
      size_t pos = 0;
      int v = std::stoi(trim_copy(*t), &pos);
      return v >= 0;
    } catch (...) {
      // unparseable tabindex falls through to the native rules
    }
  }
  if ((el.tag == "a" || el.tag == "area") && el.has_attr("href")) return true;
  if (el.tag == "button" || el.tag == "select" || el.tag == "textarea" || el.tag == "iframe") {
    return true;
  }
  if (el.tag == "input") {
    return !iequals(trim_copy(std::string(el.attr("type").value_or(""))), "hidden");
  }
  return false;
}

std::string role_token(const dom::Element& el) {
  auto role = el.attr("role");
  if (!role) return "";
  auto tokens = split_ws(*role);
  return tokens.empty() ? "" : to_lower_ascii(tokens[0]);
}

std::string landmark_role(const dom::Document& doc, const dom::Element& el) {
  if (std::string r = role_token(el); !r.empty()) return r;
  if (el.tag == "nav") return "navigation";
  if (el.tag == "main") return "main";
  if (el.tag == "aside") return "complementary";
  if (el.tag == "header" || el.tag == "footer") {
    static const char* kScopes[] = {"article", "aside", "main", "nav", "section"};
    for (int p = el.parent; p > 0; p = doc.elements[p].parent) {
      const auto& anc = doc.elements[p];
      if (std::any_of(std::begin(kScopes), std::end(kScopes),
                      [&](const char* t) { return anc.tag == t; })) {
        return "";  // scoped header/footer is not a landmark
      }
    }
    return el.tag == "header" ? "banner" : "contentinfo";
  }
  if (el.tag == "section") {
    return label_only_name(doc, el).empty() ? "" : "region";
  }
  return "";
}

bool has_tabbable_inside(const dom::Document& doc, const dom::Element& el) {
  if (is_tabbable(el)) return true;
  for (const auto& child : el.children) {
    if (child.kind != dom::NodeRef::Kind::kElement) continue;
    if (has_tabbable_inside(doc, doc.elements[child.index])) return true;
  }
  return false;
}

const dom::Element* enclosing(const dom::Document& doc, const dom::Element& el,
                              std::string_view tag) {
  for (int p = el.parent; p > 0; p = doc.elements[p].parent) {
    if (doc.elements[p].tag == tag) return &doc.elements[p];
  }
  return nullptr;
}

const dom::Element* associated_label(const dom::Document& doc, const dom::Element& control) {
  if (const auto* wrapper = enclosing(doc, control, "label")) return wrapper;
  auto id = control.attr("id");
  if (!id || trim_copy(*id).empty()) return nullptr;
  for (const auto& el : doc.elements) {
    if (el.synthetic || el.tag != "label") continue;
    if (auto f = el.attr("for"); f && *f == *id) return &el;
  }
  return nullptr;
}

bool has_label_association(const dom::Document& doc, const dom::Element& control) {
  if (associated_label(doc, control)) return true;
  if (!decoded_attr(control, "aria-label").empty()) return true;
  if (!labelledby_text(doc, control).empty()) return true;
  return !decoded_attr(control, "title").empty();
}

bool is_labelable_control(const dom::Element& el) {
  static const char* kTags[] = {"input", "select", "textarea", "button",
                                "meter", "output", "progress"};
  return std::any_of(std::begin(kTags), std::end(kTags),
                     [&](const char* t) { return el.tag == t; });
}

std::optional<size_t> label_text_position(const dom::Document& doc, const dom::Element& label) {
  std::optional<size_t> found;
  std::vector<const dom::Element*> stack = {&label};
  // document-order walk; the first non-whitespace text byte wins
  std::function<void(const dom::Element&)> walk = [&](const dom::Element& el) {
    for (const auto& child : el.children) {
      if (found) return;
      if (child.kind == dom::NodeRef::Kind::kText) {
        const auto& node = doc.texts[child.index];
        std::string decoded = trim_copy(decode_entities(doc.text_of(node)));
        if (!decoded.empty()) found = node.span.start;
        continue;
      }
      const auto& sub = doc.elements[child.index];
      if (is_labelable_control(sub)) continue;  // the control itself is not the label text
      walk(sub);
    }
  };
  walk(label);
  return found;
}

std::vector<const dom::Element*> table_cells(const dom::Document& doc,
                                             const dom::Element& table) {
  std::vector<const dom::Element*> cells;
  std::function<void(const dom::Element&)> walk = [&](const dom::Element& el) {
    for (const auto& child : el.children) {
      if (child.kind != dom::NodeRef::Kind::kElement) continue;
      const auto& sub = doc.elements[child.index];
      if (sub.tag == "table") continue;  // nested tables own their cells
      if (sub.tag == "td" || sub.tag == "th") cells.push_back(&sub);
      walk(sub);
    }
  };
  walk(table);
  return cells;
}

bool is_image_only_link(const dom::Document& doc, const dom::Element& link) {
  int imgs = 0;
  bool other = false;
  std::function<void(const dom::Element&)> walk = [&](const dom::Element& el) {
    for (const auto& child : el.children) {
      if (child.kind == dom::NodeRef::Kind::kText) {
        if (!trim_copy(decode_entities(doc.text_of(doc.texts[child.index]))).empty()) {
          other = true;
        }
        continue;
      }
      const auto& sub = doc.elements[child.index];
      if (sub.tag == "img") {
        ++imgs;
        continue;
      }
      walk(sub);
    }
  };
  walk(link);
  return imgs == 1 && !other;
}

std::optional<std::string> label_position_defect(const dom::Document& doc,
                                                 const dom::Element& input) {
  const auto* label = associated_label(doc, input);
  if (!label) return std::nullopt;
  auto text_pos = label_text_position(doc, *label);
  if (!text_pos) return std::nullopt;  // empty labels are another rule's business

  std::string type = to_lower_ascii(trim_copy(std::string(input.attr("type").value_or("text"))));
  bool follows_control = type == "checkbox" || type == "radio";
  if (follows_control && *text_pos < input.span.start) {
    return "label text for a " + type + " input must come after the control";
  }
  if (!follows_control && *text_pos > input.span.start) {
    return "label text for a " + type + " input must come before the control";
  }
  return std::nullopt;
}

void RuleContext::fail(const std::string& rule_id, const dom::Element& el, std::string message,
                       nlohmann::json evidence) {
  applicable(rule_id, el.doc_index);
  Finding f;
  f.rule_id = rule_id;
  f.level = ruleset == Ruleset::kA ? Level::kViolation : Level::kFailed;
  f.key = el.doc_index;
  f.path = doc.css_path(el);
  f.span = el.span;
  f.message = std::move(message);
  f.evidence = std::move(evidence);
  f.evidence["key"] = f.key;
  report.findings.push_back(std::move(f));
}

void RuleContext::fail_block(const std::string& rule_id, const BlockRef& ref, std::string message,
                             nlohmann::json evidence) {
  applicable(rule_id, block_key(ref));
  Finding f;
  f.rule_id = rule_id;
  f.level = ruleset == Ruleset::kA ? Level::kViolation : Level::kFailed;
  f.key = block_key(ref);
  f.path = block_path(ref);
  f.span = block(ref).span;
  f.message = std::move(message);
  f.evidence = std::move(evidence);
  f.evidence["key"] = f.key;
  report.findings.push_back(std::move(f));
}

std::string RuleContext::block_path(const BlockRef& ref) const {
  const auto& sheet = doc.stylesheets[ref.sheet];
  if (sheet.origin == css::Stylesheet::Origin::kInlineAttribute && sheet.owner_element >= 0) {
    return doc.css_path(doc.elements[sheet.owner_element]) + "[style]";
  }
  std::string selector = collapse_ws(block(ref).selector_text);
  return "css-block[" + std::to_string(ref.ordinal) + "] " + selector;
}

}  // namespace a11y::rules
