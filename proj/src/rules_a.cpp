#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "a11y/color.hpp"
#include "a11y/text_util.hpp"
#include "rules_internal.hpp"

namespace a11y::rules {
namespace {

bool decorative(const dom::Element& el) {
  if (auto alt = el.attr("alt"); alt && trim_copy(decode_entities(*alt)).empty()) return true;
  std::string role = role_token(el);
  if (role == "presentation" || role == "none") return true;
  if (auto aria = el.attr("aria-hidden"); aria && iequals(trim_copy(*aria), "true")) return true;
  return false;
}

std::string decoded_attr(const dom::Element& el, std::string_view name) {
  auto v = el.attr(name);
  return v ? collapse_ws(decode_entities(*v)) : "";
}

bool has_direct_text(const RuleContext& ctx, const dom::Element& el) {
  for (const auto& child : el.children) {
    if (child.kind != dom::NodeRef::Kind::kText) continue;
    if (!trim_copy(decode_entities(ctx.doc.text_of(ctx.doc.texts[child.index]))).empty()) {
      return true;
    }
  }
  return false;
}

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

void check_text_contrast(RuleContext& ctx) {
  static const char* kSkip[] = {"script", "style", "title"};
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (std::any_of(std::begin(kSkip), std::end(kSkip),
                    [&](const char* t) { return el.tag == t; })) {
      continue;
    }
    if (!has_direct_text(ctx, el)) continue;
    if (!ctx.styles.is_visible(el.doc_index)) continue;
    auto fg = ctx.styles.effective_foreground(el.doc_index);
    auto bg = ctx.styles.effective_background(el.doc_index);
    if (!fg || !bg) continue;  // colors unknown -> rule inapplicable here
    ctx.applicable("text_contrast_sufficient", el.doc_index);
    double ratio = style::contrast_ratio(*fg, *bg);
    bool large = ctx.styles.is_large_text(el.doc_index);
    double threshold = large ? 3.0 : 4.5;
    if (ratio < threshold) {
      ctx.fail("text_contrast_sufficient", el,
               "text contrast " + std::to_string(round4(ratio)) + " is below the required " +
                   std::to_string(threshold),
               {{"ratio", round4(ratio)},
                {"foreground", style::to_hex(*fg)},
                {"background", style::to_hex(*bg)},
                {"threshold", threshold},
                {"large_text", large}});
    }
  }
}

void check_svg_labelled(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "svg") continue;
    ctx.applicable("svg_graphics_labelled", el.doc_index);
    if (decorative(el)) continue;
    if (accessible_name(ctx.doc, el).empty()) {
      ctx.fail("svg_graphics_labelled", el, "svg graphic has no accessible name");
    }
  }
}

void check_aria_hidden_nontabbable(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    auto aria = el.attr("aria-hidden");
    if (!aria || !iequals(trim_copy(*aria), "true")) continue;
    ctx.applicable("aria_hidden_nontabbable", el.doc_index);
    if (has_tabbable_inside(ctx.doc, el)) {
      ctx.fail("aria_hidden_nontabbable", el,
               "element hidden from assistive technology contains tabbable content");
    }
  }
}

void check_img_alt_valid(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "img") continue;
    ctx.applicable("img_alt_valid", el.doc_index);
    if (decorative(el)) continue;
    if (accessible_name(ctx.doc, el).empty()) {
      ctx.fail("img_alt_valid", el, "image has no accessible name and is not marked decorative");
    }
  }
}

// Text of a link counting only real text nodes, so an image's own alt cannot
// match itself.
std::string link_text_without_alts(const dom::Document& doc, const dom::Element& link) {
  std::string out;
  std::function<void(const dom::Element&)> walk = [&](const dom::Element& el) {
    if (el.tag == "script" || el.tag == "style") return;
    for (const auto& child : el.children) {
      if (child.kind == dom::NodeRef::Kind::kText) {
        out += decode_entities(doc.text_of(doc.texts[child.index]));
        out.push_back(' ');
        continue;
      }
      walk(doc.elements[child.index]);
    }
  };
  walk(link);
  return collapse_ws(out);
}

void check_img_alt_redundant(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "img") continue;
    const auto* link = enclosing(ctx.doc, el, "a");
    if (!link) continue;
    std::string alt = decoded_attr(el, "alt");
    if (alt.empty()) continue;
    ctx.applicable("img_alt_redundant", el.doc_index);

    std::string lower_alt = to_lower_ascii(alt);
    std::string own_text = to_lower_ascii(link_text_without_alts(ctx.doc, *link));
    if (!own_text.empty() && own_text == lower_alt) {
      ctx.fail("img_alt_redundant", el, "image alt repeats the link text",
               {{"alt", alt}, {"link_text", own_text}});
      continue;
    }
    // adjacent sibling link with the same text
    if (link->parent < 0) continue;
    const auto& parent = ctx.doc.elements[link->parent];
    const dom::Element* prev = nullptr;
    const dom::Element* next = nullptr;
    bool seen = false;
    for (const auto& child : parent.children) {
      if (child.kind != dom::NodeRef::Kind::kElement) continue;
      const auto& sib = ctx.doc.elements[child.index];
      if (&sib == link) {
        seen = true;
        continue;
      }
      if (!seen) {
        prev = &sib;
      } else if (!next) {
        next = &sib;
      }
    }
    for (const auto* sib : {prev, next}) {
      if (!sib || sib->tag != "a" || !sib->has_attr("href")) continue;
      std::string sib_text = to_lower_ascii(visible_text(ctx.doc, *sib));
      if (!sib_text.empty() && sib_text == lower_alt) {
        ctx.fail("img_alt_redundant", el, "image alt repeats an adjacent link's text",
                 {{"alt", alt}, {"adjacent_text", sib_text}});
        break;
      }
    }
  }
}

bool label_exempt_input(const dom::Element& el) {
  std::string type = to_lower_ascii(trim_copy(std::string(el.attr("type").value_or("text"))));
  static const char* kExempt[] = {"hidden", "submit", "reset", "button", "image"};
  return std::any_of(std::begin(kExempt), std::end(kExempt),
                     [&](const char* t) { return type == t; });
}

void check_input_label_exists(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    bool control = el.tag == "select" || el.tag == "textarea" ||
                   (el.tag == "input" && !label_exempt_input(el));
    if (!control) continue;
    ctx.applicable("input_label_exists", el.doc_index);
    if (!has_label_association(ctx.doc, el)) {
      ctx.fail("input_label_exists", el, "form control has no associated label");
    }
  }
}

void check_label_ref_valid(RuleContext& ctx) {
  std::map<std::string, int> id_counts;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (auto id = el.attr("id")) ++id_counts[std::string(*id)];
  }
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "label") continue;
    auto forv = el.attr("for");
    if (!forv) continue;
    ctx.applicable("label_ref_valid", el.doc_index);
    std::string target_id = trim_copy(*forv);
    if (target_id.empty()) {
      ctx.fail("label_ref_valid", el, "label 'for' attribute is empty");
      continue;
    }
    auto count = id_counts.find(target_id);
    if (count == id_counts.end()) {
      ctx.fail("label_ref_valid", el, "label 'for' references a missing id",
               {{"for", target_id}});
      continue;
    }
    if (count->second > 1) {
      ctx.fail("label_ref_valid", el, "label 'for' references a duplicated id",
               {{"for", target_id}});
      continue;
    }
    const auto* target = find_by_id(ctx.doc, target_id);
    if (target && !is_labelable_control(*target)) {
      ctx.fail("label_ref_valid", el, "label 'for' does not reference a form control",
               {{"for", target_id}, {"target_tag", target->tag}});
    }
  }
}

void check_a_text_purpose(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href")) continue;
    ctx.applicable("a_text_purpose", el.doc_index);
    if (accessible_name(ctx.doc, el).empty()) {
      ctx.fail("a_text_purpose", el, "hyperlink has no accessible name describing its purpose");
    }
  }
}

void check_aria_id_unique(RuleContext& ctx) {
  static const char* kRefAttrs[] = {"aria-labelledby",       "aria-describedby",
                                    "aria-controls",         "aria-owns",
                                    "aria-activedescendant", "aria-details",
                                    "aria-errormessage",     "aria-flowto"};
  std::map<std::string, int> id_counts;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (auto id = el.attr("id")) ++id_counts[std::string(*id)];
  }
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    bool has_ref = std::any_of(std::begin(kRefAttrs), std::end(kRefAttrs),
                               [&](const char* a) { return el.has_attr(a); });
    if (!has_ref) continue;
    ctx.applicable("aria_id_unique", el.doc_index);
    nlohmann::json bad = nlohmann::json::array();
    for (const char* attr : kRefAttrs) {
      auto v = el.attr(attr);
      if (!v) continue;
      auto tokens = split_ws(*v);
      if (tokens.empty()) {
        bad.push_back({{"attribute", attr}, {"problem", "empty reference"}});
        continue;
      }
      for (const auto& token : tokens) {
        auto count = id_counts.find(token);
        if (count == id_counts.end()) {
          bad.push_back({{"attribute", attr}, {"id", token}, {"problem", "missing"}});
        } else if (count->second > 1) {
          bad.push_back({{"attribute", attr}, {"id", token}, {"problem", "not unique"}});
        } else if (!ctx.styles.is_visible(find_by_id(ctx.doc, token)->doc_index)) {
          bad.push_back({{"attribute", attr}, {"id", token}, {"problem", "hidden"}});
        }
      }
    }
    if (!bad.empty()) {
      ctx.fail("aria_id_unique", el,
               "ARIA reference must point at a non-empty unique id of a visible element "
               "(static visibility approximation)",
               {{"references", bad}});
    }
  }
}

void check_complementary_labelled(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (landmark_role(ctx.doc, el) != "complementary") continue;
    ctx.applicable("aria_complementary_labelled", el.doc_index);
    if (label_only_name(ctx.doc, el).empty()) {
      ctx.fail("aria_complementary_labelled", el,
               "complementary landmark has no label describing its purpose");
    }
  }
}

void check_landmark_unique(RuleContext& ctx, const std::string& rule_id, const char* role) {
  std::vector<const dom::Element*> landmarks;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (landmark_role(ctx.doc, el) == role) landmarks.push_back(&el);
  }
  for (const auto* el : landmarks) ctx.applicable(rule_id, el->doc_index);
  if (landmarks.size() < 2) return;

  std::map<std::string, int> name_counts;
  for (const auto* el : landmarks) {
    name_counts[to_lower_ascii(label_only_name(ctx.doc, *el))]++;
  }
  for (const auto* el : landmarks) {
    std::string name = label_only_name(ctx.doc, *el);
    if (name.empty()) {
      ctx.fail(rule_id, *el,
               std::string(role) + " landmark needs a label when several share the role");
    } else if (name_counts[to_lower_ascii(name)] > 1) {
      ctx.fail(rule_id, *el, std::string(role) + " landmark label is not unique",
               {{"label", name}});
    }
  }
}

void check_frame_title(RuleContext& ctx) {
  std::vector<const dom::Element*> frames;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (el.tag == "iframe" || el.tag == "frame") frames.push_back(&el);
  }
  std::map<std::string, int> title_counts;
  for (const auto* el : frames) {
    ctx.applicable("frame_title_exists", el->doc_index);
    std::string title = decoded_attr(*el, "title");
    if (!title.empty()) title_counts[to_lower_ascii(title)]++;
  }
  for (const auto* el : frames) {
    std::string title = decoded_attr(*el, "title");
    if (title.empty()) {
      ctx.fail("frame_title_exists", *el, "frame has no non-empty title attribute");
    } else if (title_counts[to_lower_ascii(title)] > 1) {
      ctx.fail("frame_title_exists", *el, "frame title is not unique", {{"title", title}});
    }
  }
}

void check_table_headers_exists(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "table") continue;
    if (!is_data_table(ctx.doc, el)) continue;
    auto cells = table_cells(ctx.doc, el);
    bool has_td = std::any_of(cells.begin(), cells.end(),
                              [](const dom::Element* c) { return c->tag == "td"; });
    if (!has_td) continue;  // no data cells, nothing to associate
    ctx.applicable("table_headers_exists", el.doc_index);
    bool has_th = std::any_of(cells.begin(), cells.end(),
                              [](const dom::Element* c) { return c->tag == "th"; });
    bool has_headers_attr = std::any_of(cells.begin(), cells.end(), [](const dom::Element* c) {
      return c->has_attr("headers");
    });
    if (!has_th && !has_headers_attr) {
      ctx.fail("table_headers_exists", el, "data table does not identify any headers");
    }
  }
}

void check_single_landmark(RuleContext& ctx, const std::string& rule_id, const char* role) {
  std::vector<const dom::Element*> found;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (landmark_role(ctx.doc, el) == role) found.push_back(&el);
  }
  for (const auto* el : found) ctx.applicable(rule_id, el->doc_index);
  if (found.size() <= 1) return;
  for (const auto* el : found) {
    ctx.fail(rule_id, *el,
             std::string("page should contain a single ") + role + " landmark, found " +
                 std::to_string(found.size()));
  }
}

void check_html_lang(RuleContext& ctx) {
  const auto* html = ctx.doc.first_of_tag("html");
  if (!html) return;  // fragments have no document language slot
  ctx.applicable("html_lang_exists", html->doc_index);
  std::string lang = decoded_attr(*html, "lang");
  if (lang.empty()) lang = decoded_attr(*html, "xml:lang");
  if (lang.empty()) {
    ctx.fail("html_lang_exists", *html,
             "document does not identify its default language with a 'lang' attribute");
  }
}

void check_input_label_after(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "input") continue;
    if (label_exempt_input(el)) continue;
    if (!associated_label(ctx.doc, el)) continue;
    ctx.applicable("input_label_after", el.doc_index);
    if (auto defect = label_position_defect(ctx.doc, el)) {
      ctx.fail("input_label_after", el, *defect);
    }
  }
}

void check_label_content(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "label") continue;
    ctx.applicable("label_content_exists", el.doc_index);
    if (accessible_name(ctx.doc, el).empty()) {
      ctx.fail("label_content_exists", el, "label has no text and no named content");
    }
  }
}

void check_table_scope_valid(RuleContext& ctx) {
  static const char* kValues[] = {"row", "col", "rowgroup", "colgroup"};
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || !el.has_attr("scope")) continue;
    ctx.applicable("table_scope_valid", el.doc_index);
    if (el.tag != "th") {
      ctx.fail("table_scope_valid", el, "scope attribute is only valid on th cells");
      continue;
    }
    std::string value = to_lower_ascii(trim_copy(std::string(el.attr("scope").value_or(""))));
    if (!std::any_of(std::begin(kValues), std::end(kValues),
                     [&](const char* v) { return value == v; })) {
      ctx.fail("table_scope_valid", el, "scope value must be row, col, rowgroup or colgroup",
               {{"scope", value}});
    }
  }
}

const std::set<std::string>& aria_roles() {
  static const std::set<std::string> kRoles = {
      "alert",        "alertdialog",   "application",  "article",       "banner",
      "blockquote",   "button",        "caption",      "cell",          "checkbox",
      "code",         "columnheader",  "combobox",     "complementary", "contentinfo",
      "definition",   "deletion",      "dialog",       "directory",     "document",
      "emphasis",     "feed",          "figure",       "form",          "generic",
      "grid",         "gridcell",      "group",        "heading",       "img",
      "insertion",    "link",          "list",         "listbox",       "listitem",
      "log",          "main",          "marquee",      "math",          "menu",
      "menubar",      "menuitem",      "menuitemcheckbox", "menuitemradio", "meter",
      "navigation",   "none",          "note",         "option",        "paragraph",
      "presentation", "progressbar",   "radio",        "radiogroup",    "region",
      "row",          "rowgroup",      "rowheader",    "scrollbar",     "search",
      "searchbox",    "separator",     "slider",       "spinbutton",    "status",
      "strong",       "subscript",     "superscript",  "switch",        "tab",
      "table",        "tablist",       "tabpanel",     "term",          "textbox",
      "time",         "timer",         "toolbar",      "tooltip",       "tree",
      "treegrid",     "treeitem"};
  return kRoles;
}

void check_aria_role_valid(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || !el.has_attr("role")) continue;
    ctx.applicable("aria_role_valid", el.doc_index);
    auto tokens = split_ws(decode_entities(std::string(el.attr("role").value_or(""))));
    if (tokens.empty()) {
      ctx.fail("aria_role_valid", el, "role attribute is empty");
      continue;
    }
    for (const auto& token : tokens) {
      if (!aria_roles().count(to_lower_ascii(token))) {
        ctx.fail("aria_role_valid", el, "unknown ARIA role", {{"role", to_lower_ascii(token)}});
        break;
      }
    }
  }
}

void check_page_title(RuleContext& ctx) {
  const auto* html = ctx.doc.first_of_tag("html");
  if (!html) return;
  ctx.applicable("page_title_exists", html->doc_index);
  const auto* title = ctx.doc.first_of_tag("title");
  if (!title) {
    ctx.fail("page_title_exists", *html, "page has no title element");
    return;
  }
  if (visible_text(ctx.doc, *title).empty()) {
    Finding f;  // attach to the html census key but point at the empty element
    ctx.applicable("page_title_exists", html->doc_index);
    f.rule_id = "page_title_exists";
    f.level = Level::kViolation;
    f.key = html->doc_index;
    f.path = ctx.doc.css_path(*title);
    f.span = title->span;
    f.message = "page title is empty";
    f.evidence["key"] = f.key;
    ctx.report.findings.push_back(std::move(f));
  }
}

bool targets_main_landmark(const dom::Document& doc, std::string_view href) {
  if (href.size() < 2 || href[0] != '#') return false;
  const auto* target = find_by_id(doc, href.substr(1));
  if (!target) return false;
  for (const dom::Element* el = target; el != nullptr;
       el = el->parent >= 0 ? &doc.elements[el->parent] : nullptr) {
    if (el->synthetic) break;
    if (landmark_role(doc, *el) == "main") return true;
    if (el->parent < 0) break;
  }
  return false;
}

void check_skip_main(RuleContext& ctx) {
  const auto* html = ctx.doc.first_of_tag("html");
  if (!html) return;
  ctx.applicable("skip_main_exists", html->doc_index);
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a") continue;
    auto href = el.attr("href");
    if (href && targets_main_landmark(ctx.doc, trim_copy(*href))) return;
  }
  ctx.fail("skip_main_exists", *html,
           "page has no link that skips directly to the main content");
}

Rule meta(const char* id, std::vector<std::string> techniques, const char* description,
          bool implemented) {
  Rule r;
  r.id = id;
  r.ruleset = Ruleset::kA;
  r.wcag_techniques = std::move(techniques);
  r.description = description;
  r.level = Level::kViolation;
  r.implemented = implemented;
  return r;
}

}  // namespace

std::vector<RegisteredRule> make_registry_a() {
  std::vector<RegisteredRule> rules;
  auto add = [&](Rule r, CheckFn fn) { rules.push_back({std::move(r), fn}); };

  add(meta("text_contrast_sufficient", {"G18", "G145"},
           "The contrast ratio of text with its background must meet WCAG AA requirements.", true),
      check_text_contrast);
  add(meta("svg_graphics_labelled", {},
           "A non-decorative SVG element must have an accessible name.", true),
      check_svg_labelled);
  add(meta("aria_hidden_nontabbable", {},
           "A hidden element should not contain any tabbable elements.", true),
      check_aria_hidden_nontabbable);
  add(meta("img_alt_valid", {"H37", "G94", "F38"},
           "Images must have accessible names unless they are decorative or redundant.", true),
      check_img_alt_valid);
  add(meta("img_alt_redundant", {"H2"},
           "The text alternative for an image within a link should not repeat the link text or "
           "adjacent link text.",
           true),
      check_img_alt_redundant);
  add(meta("input_label_exists", {"H44"},
           "Each form control must have an associated label.", true),
      check_input_label_exists);
  add(meta("label_ref_valid", {"H44"},
           "The 'for' attribute for a label must reference a non-empty, unique 'id' attribute of "
           "an input element.",
           true),
      check_label_ref_valid);
  add(meta("a_text_purpose", {"H30"},
           "Hyperlinks must have an accessible name for their purpose.", true),
      check_a_text_purpose);
  add(meta("aria_child_tabbable", {},
           "UI components must have at least one tabbable descendant for keyboard access.",
           false),
      nullptr);
  add(meta("aria_complementary_labelled", {},
           "Each element with the \"complementary\" role must have a label that describes its "
           "purpose.",
           true),
      check_complementary_labelled);
  add(meta("aria_navigation_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"navigation\" role must have a unique label that describes its "
           "purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_navigation_label_unique",
                                                   "navigation"); });
  add(meta("aria_id_unique", {},
           "The ARIA property must reference a non-empty unique id of an existing element that is "
           "visible.",
           true),
      check_aria_id_unique);
  add(meta("aria_complementary_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"complementary\" role must have a unique label that describes "
           "its purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_complementary_label_unique",
                                                   "complementary"); });
  add(meta("frame_title_exists", {"H64"},
           "Inline frames must have a unique, non-empty 'title' attribute.", true),
      check_frame_title);
  add(meta("table_headers_exists", {"H43", "H63"}, "Data tables must identify headers.", true),
      check_table_headers_exists);
  add(meta("aria_banner_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"banner\" role must have a unique label that describes its "
           "purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_banner_label_unique", "banner"); });
  add(meta("aria_banner_single", {},
           "A page, document, or application should only have one element with the \"banner\" "
           "role.",
           true),
      [](RuleContext& ctx) { check_single_landmark(ctx, "aria_banner_single", "banner"); });
  add(meta("label_name_visible", {},
           "Accessible names must match or contain the visible label text.", false),
      nullptr);
  add(meta("aria_widget_labelled", {"ARIA4"},
           "Interactive components must have a programmatically associated name.", false),
      nullptr);
  add(meta("element_scrollable_tabbable", {"G202"},
           "Scrollable elements should be tabbable or contain tabbable content.", false),
      nullptr);
  add(meta("html_lang_exists", {"H57"},
           "The page must identify the default language of the document with a 'lang' attribute.",
           true),
      check_html_lang);
  add(meta("input_label_after", {}, "An input element must be labeled.", true),
      check_input_label_after);
  add(meta("label_content_exists", {},
           "A label element must have non-empty text or an element with an accessible name.",
           true),
      check_label_content);
  add(meta("table_scope_valid", {"H63"},
           "The scope attribute must be used correctly to associate table headers and data "
           "cells.",
           true),
      check_table_scope_valid);
  add(meta("aria_contentinfo_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"contentinfo\" role must have a unique label that describes "
           "its purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_contentinfo_label_unique",
                                                   "contentinfo"); });
  add(meta("aria_contentinfo_single", {},
           "A page, document, or application should only have one element with the "
           "\"contentinfo\" role.",
           true),
      [](RuleContext& ctx) { check_single_landmark(ctx, "aria_contentinfo_single",
                                                   "contentinfo"); });
  add(meta("aria_main_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"main\" role must have a unique label that describes its "
           "purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_main_label_unique", "main"); });
  add(meta("aria_region_label_unique", {"ARIA6", "ARIA13"},
           "Each element with the \"region\" role must have a unique label that describes its "
           "purpose.",
           true),
      [](RuleContext& ctx) { check_landmark_unique(ctx, "aria_region_label_unique", "region"); });
  add(meta("aria_role_valid", {"ARIA4"},
           "Elements must have valid roles per the ARIA specification.", true),
      check_aria_role_valid);
  add(meta("combobox_popup_reference", {}, "A combobox must reference a valid popup element.",
           false),
      nullptr);
  add(meta("element_orientation_unlocked", {},
           "Content must not restrict its orientation to a single display orientation.", false),
      nullptr);
  add(meta("page_title_exists", {"G88"},
           "The page should have a title that correctly identifies the subject of the page.",
           true),
      check_page_title);
  add(meta("skip_main_exists", {"G1"},
           "Pages must provide a way to skip directly to the main content.", true),
      check_skip_main);
  add(meta("table_headers_related", {"H43", "H63"},
           "Table headers must be related to their corresponding data cells.", false),
      nullptr);
  return rules;
}

}  // namespace a11y::rules
