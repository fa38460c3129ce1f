#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "a11y/color.hpp"
#include "a11y/text_util.hpp"
#include "rules_internal.hpp"

namespace a11y::rules {
namespace {

constexpr int kLinkGroupThreshold = 5;

std::string decoded_attr(const dom::Element& el, std::string_view name) {
  auto v = el.attr(name);
  return v ? collapse_ws(decode_entities(*v)) : "";
}

// "/img/team-photo.jpg?v=2" -> "team-photo.jpg"
std::string src_basename(std::string_view src) {
  std::string s(trim_copy(src));
  if (size_t q = s.find_first_of("?#"); q != std::string::npos) s = s.substr(0, q);
  if (size_t slash = s.find_last_of('/'); slash != std::string::npos) s = s.substr(slash + 1);
  return s;
}

void check_alt_failure(RuleContext& ctx) {
  static const char* kPlaceholders[] = {"image", "picture", "photo", "img", "spacer", ""};
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "img") continue;
    auto alt = el.attr("alt");
    std::string src = trim_copy(std::string(el.attr("src").value_or("")));
    if (!alt || src.empty()) continue;
    ctx.applicable("AltFailure", el.doc_index);

    std::string alt_text = to_lower_ascii(trim_copy(decode_entities(*alt)));
    bool placeholder = std::any_of(std::begin(kPlaceholders), std::end(kPlaceholders),
                                   [&](const char* p) { return alt_text == p; });
    std::string base = to_lower_ascii(src_basename(src));
    std::string stem = base;
    if (size_t dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    bool filename = !base.empty() && (alt_text == base || alt_text == stem);
    if (placeholder || filename) {
      ctx.fail("AltFailure", el, "image alt text is not a real alternative",
               {{"alt", alt_text}, {"src", src}});
    }
  }
}

void check_caption_data_tbl(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "table" || !is_data_table(ctx.doc, el)) continue;
    ctx.applicable("CaptionDataTbl", el.doc_index);
    bool captioned = false;
    for (const auto& child : el.children) {
      if (child.kind != dom::NodeRef::Kind::kElement) continue;
      const auto& sub = ctx.doc.elements[child.index];
      if (sub.tag == "caption" && !visible_text(ctx.doc, sub).empty()) {
        captioned = true;
        break;
      }
    }
    if (!captioned) {
      ctx.fail("CaptionDataTbl", el, "data table has no caption associating its purpose");
    }
  }
}

bool block_sets_background(const css::DeclarationBlock& block) {
  for (const auto& d : block.declarations) {
    if (d.property == "background-color") return true;
    if (d.property == "background") {
      // the shorthand counts only when it actually carries a color
      std::string value = d.value;
      std::string token;
      int depth = 0;
      auto flush = [&]() {
        if (!token.empty() && style::parse_color(token)) return true;
        token.clear();
        return false;
      };
      for (char c : value) {
        if (c == '(') ++depth;
        if (c == ')') depth = depth > 0 ? depth - 1 : 0;
        if (depth == 0 && is_ascii_space(c)) {
          if (flush()) return true;
          continue;
        }
        token.push_back(c);
      }
      if (flush()) return true;
    }
  }
  return false;
}

void check_color_contrast_fail(RuleContext& ctx) {
  for (const auto& ref : ctx.blocks) {
    const auto& block = ctx.block(ref);
    bool sets_color = std::any_of(block.declarations.begin(), block.declarations.end(),
                                  [](const css::Declaration& d) { return d.property == "color"; });
    bool sets_bg = block_sets_background(block);
    if (!sets_color && !sets_bg) continue;
    ctx.applicable("ColorContrastFail", ctx.block_key(ref));
    if (sets_color != sets_bg) {
      ctx.fail_block("ColorContrastFail", ref,
                     sets_color ? "declaration sets a foreground color without a background color"
                                : "declaration sets a background color without a foreground color",
                     {{"selector", collapse_ws(block.selector_text)}});
    }
  }
}

void check_combine_adj(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href")) continue;
    ctx.applicable("CombineAdj", el.doc_index);
  }
  std::set<int> flagged;
  for (const auto& parent : ctx.doc.elements) {
    const dom::Element* prev = nullptr;
    for (const auto& child : parent.children) {
      if (child.kind == dom::NodeRef::Kind::kText) {
        const auto& node = ctx.doc.texts[child.index];
        if (!trim_copy(decode_entities(ctx.doc.text_of(node))).empty()) prev = nullptr;
        continue;
      }
      const auto& sub = ctx.doc.elements[child.index];
      if (sub.tag != "a" || !sub.has_attr("href")) {
        prev = nullptr;
        continue;
      }
      if (prev) {
        std::string href_a = trim_copy(std::string(prev->attr("href").value_or("")));
        std::string href_b = trim_copy(std::string(sub.attr("href").value_or("")));
        if (!href_a.empty() && href_a == href_b) {
          bool img_a = is_image_only_link(ctx.doc, *prev);
          bool img_b = is_image_only_link(ctx.doc, sub);
          std::string text_of_other =
              img_a ? visible_text(ctx.doc, sub) : visible_text(ctx.doc, *prev);
          if (img_a != img_b && !text_of_other.empty()) {
            for (const auto* link : {prev, &sub}) {
              if (flagged.insert(link->doc_index).second) {
                ctx.fail("CombineAdj", *link,
                         "adjacent image and text links point at the same resource and should be "
                         "combined",
                         {{"href", href_a}});
              }
            }
          }
        }
      }
      prev = &sub;
    }
  }
}

void check_focus_remove(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || !el.has_attr("onfocus")) continue;
    ctx.applicable("FocusRemoveFail", el.doc_index);
    if (contains_ci(std::string(el.attr("onfocus").value_or("")), "blur(")) {
      ctx.fail("FocusRemoveFail", el, "onfocus handler removes focus as soon as it is received");
    }
  }
}

void check_font_size_css(RuleContext& ctx) {
  static const char* kAbsolute[] = {"px", "pt", "cm", "mm", "in"};
  for (const auto& ref : ctx.blocks) {
    const auto& block = ctx.block(ref);
    nlohmann::json offending = nlohmann::json::array();
    bool applicable = false;
    for (const auto& d : block.declarations) {
      if (d.property != "font-size") continue;
      applicable = true;
      std::string v = to_lower_ascii(trim_copy(d.value));
      size_t pos = 0;
      try {
        (void)std::stod(v, &pos);
      } catch (...) {
        continue;
      }
      std::string unit = trim_copy(std::string_view(v).substr(pos));
      if (std::any_of(std::begin(kAbsolute), std::end(kAbsolute),
                      [&](const char* u) { return unit == u; })) {
        offending.push_back(d.value);
      }
    }
    if (!applicable) continue;
    ctx.applicable("FontSizeCSS", ctx.block_key(ref));
    if (!offending.empty()) {
      ctx.fail_block("FontSizeCSS", ref,
                     "font sizes should use relative units (percent, em) or names",
                     {{"values", offending}});
    }
  }
}

void check_headings_org(RuleContext& ctx) {
  std::vector<const dom::Element*> headings;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic) continue;
    if (el.tag.size() == 2 && el.tag[0] == 'h' && el.tag[1] >= '1' && el.tag[1] <= '6') {
      headings.push_back(&el);
    }
  }
  if (headings.empty()) return;
  for (const auto* h : headings) ctx.applicable("HeadingsOrg", h->doc_index);
  int prev = 0;
  for (const auto* h : headings) {
    int level = h->tag[1] - '0';
    if (level > prev + 1) {
      ctx.fail("HeadingsOrg", *h,
               prev == 0 ? "first heading should be an h1"
                         : "heading skips from level " + std::to_string(prev) + " to " +
                               std::to_string(level));
    }
    prev = level;
  }
}

void check_id_headers_data_tbl(RuleContext& ctx) {
  for (const auto& table : ctx.doc.elements) {
    if (table.synthetic || table.tag != "table" || !is_data_table(ctx.doc, table)) continue;
    auto cells = table_cells(ctx.doc, table);
    std::set<std::string> th_ids;
    for (const auto* cell : cells) {
      if (cell->tag != "th") continue;
      if (auto id = cell->attr("id"); id && !trim_copy(*id).empty()) {
        th_ids.insert(std::string(*id));
      }
    }
    for (const auto* cell : cells) {
      auto headers = cell->attr("headers");
      if (!headers) continue;
      ctx.applicable("IdHeadersDataTbl", cell->doc_index);
      for (const auto& token : split_ws(*headers)) {
        if (!th_ids.count(token)) {
          ctx.fail("IdHeadersDataTbl", *cell,
                   "headers attribute references an id that is not a th in this table",
                   {{"headers", std::string(*headers)}, {"missing", token}});
          break;
        }
      }
    }
  }
}

void check_img_link_fail(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href")) continue;
    if (!is_image_only_link(ctx.doc, el)) continue;
    ctx.applicable("ImgLinkFail", el.doc_index);
    if (accessible_name(ctx.doc, el).empty()) {
      ctx.fail("ImgLinkFail", el,
               "image is the only content of the link and carries no accessible name");
    }
  }
}

void check_label_pos(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "input") continue;
    std::string type = to_lower_ascii(trim_copy(std::string(el.attr("type").value_or("text"))));
    static const char* kExempt[] = {"hidden", "submit", "reset", "button", "image"};
    if (std::any_of(std::begin(kExempt), std::end(kExempt),
                    [&](const char* t) { return type == t; })) {
      continue;
    }
    if (!associated_label(ctx.doc, el)) continue;
    ctx.applicable("LabelPos", el.doc_index);
    if (auto defect = label_position_defect(ctx.doc, el)) {
      ctx.fail("LabelPos", el, *defect);
    }
  }
}

void check_layout_tbl_fail(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "table") continue;
    std::string role = role_token(el);
    if (role != "presentation" && role != "none") continue;
    ctx.applicable("LayoutTblFail", el.doc_index);
    auto cells = table_cells(ctx.doc, el);
    bool has_th = std::any_of(cells.begin(), cells.end(),
                              [](const dom::Element* c) { return c->tag == "th"; });
    bool has_caption = false;
    for (const auto& child : el.children) {
      if (child.kind == dom::NodeRef::Kind::kElement &&
          ctx.doc.elements[child.index].tag == "caption") {
        has_caption = true;
      }
    }
    bool has_summary = !decoded_attr(el, "summary").empty();
    if (has_th || has_caption || has_summary) {
      ctx.fail("LayoutTblFail", el,
               "layout table uses data-table markup (th, caption or summary)",
               {{"th", has_th}, {"caption", has_caption}, {"summary", has_summary}});
    }
  }
}

void check_link_title_attr(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href") || !el.has_attr("title")) continue;
    ctx.applicable("LinkTitleAttr", el.doc_index);
    std::string title = to_lower_ascii(decoded_attr(el, "title"));
    std::string text = to_lower_ascii(visible_text(ctx.doc, el));
    if (!title.empty() && title == text) {
      ctx.fail("LinkTitleAttr", el, "title attribute only repeats the link text",
               {{"title", title}});
    }
  }
}

void check_list_link_groups(RuleContext& ctx) {
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href")) continue;
    ctx.applicable("ListLinkGroups", el.doc_index);
  }
  static const char* kListContainers[] = {"ol", "ul", "dl"};
  for (const auto& parent : ctx.doc.elements) {
    if (std::any_of(std::begin(kListContainers), std::end(kListContainers),
                    [&](const char* t) { return parent.tag == t; })) {
      continue;
    }
    std::vector<const dom::Element*> run;
    auto flush = [&]() {
      if (static_cast<int>(run.size()) >= kLinkGroupThreshold) {
        for (const auto* link : run) {
          ctx.fail("ListLinkGroups", *link,
                   "run of " + std::to_string(run.size()) +
                       " consecutive links should be grouped in a list",
                   {{"run_length", run.size()}});
        }
      }
      run.clear();
    };
    for (const auto& child : parent.children) {
      if (child.kind == dom::NodeRef::Kind::kText) {
        const auto& node = ctx.doc.texts[child.index];
        if (!trim_copy(decode_entities(ctx.doc.text_of(node))).empty()) flush();
        continue;
      }
      const auto& sub = ctx.doc.elements[child.index];
      if (sub.tag == "a" && sub.has_attr("href")) {
        run.push_back(&sub);
      } else {
        flush();
      }
    }
    flush();
  }
}

void check_scope_data_tbl(RuleContext& ctx) {
  for (const auto& table : ctx.doc.elements) {
    if (table.synthetic || table.tag != "table" || !is_data_table(ctx.doc, table)) continue;
    for (const auto* cell : table_cells(ctx.doc, table)) {
      if (cell->tag != "th") continue;
      ctx.applicable("ScopeDataTbl", cell->doc_index);
      if (!cell->has_attr("scope") && !cell->has_attr("headers")) {
        ctx.fail("ScopeDataTbl", *cell,
                 "header cell is not associated with its data cells via scope");
      }
    }
  }
}

bool href_targets_main(const dom::Document& doc, const dom::Element& link) {
  auto href = link.attr("href");
  if (!href) return false;
  std::string h = trim_copy(*href);
  if (h.size() < 2 || h[0] != '#') return false;
  const auto* target = find_by_id(doc, std::string_view(h).substr(1));
  if (!target) return false;
  for (const dom::Element* el = target; el && !el->synthetic;
       el = el->parent >= 0 ? &doc.elements[el->parent] : nullptr) {
    if (landmark_role(doc, *el) == "main") return true;
    if (el->parent < 0) break;
  }
  return false;
}

void check_skip_to_main(RuleContext& ctx) {
  const auto* html = ctx.doc.first_of_tag("html");
  if (!html) return;
  ctx.applicable("SkipToMain", html->doc_index);
  const dom::Element* first_link = nullptr;
  for (const auto& el : ctx.doc.elements) {
    if (el.synthetic || el.tag != "a" || !el.has_attr("href")) continue;
    first_link = &el;
    break;
  }
  if (!first_link) {
    ctx.fail("SkipToMain", *html, "page has no link to skip to the main content area");
    return;
  }
  if (!href_targets_main(ctx.doc, *first_link)) {
    ctx.fail("SkipToMain", *html,
             "the first link on the page does not go to the main content area");
  }
}

void check_submit_btn(RuleContext& ctx) {
  for (const auto& form : ctx.doc.elements) {
    if (form.synthetic || form.tag != "form") continue;
    ctx.applicable("SubmitBtn", form.doc_index);
    bool found = false;
    std::function<void(const dom::Element&)> walk = [&](const dom::Element& el) {
      for (const auto& child : el.children) {
        if (found || child.kind != dom::NodeRef::Kind::kElement) continue;
        const auto& sub = ctx.doc.elements[child.index];
        std::string type = to_lower_ascii(trim_copy(std::string(sub.attr("type").value_or(""))));
        if (sub.tag == "input" && (type == "submit" || type == "image")) found = true;
        if (sub.tag == "button" && (type.empty() || type == "submit")) found = true;
        walk(sub);
      }
    };
    walk(form);
    if (!found) {
      ctx.fail("SubmitBtn", form, "form provides no submit button");
    }
  }
}

Rule meta(const char* id, std::vector<std::string> techniques, const char* description,
          bool implemented) {
  Rule r;
  r.id = id;
  r.ruleset = Ruleset::kQ;
  r.wcag_techniques = std::move(techniques);
  r.description = description;
  r.level = Level::kFailed;
  r.implemented = implemented;
  return r;
}

}  // namespace

std::vector<RegisteredRule> make_registry_q() {
  std::vector<RegisteredRule> rules;
  auto add = [&](Rule r, CheckFn fn) { rules.push_back({std::move(r), fn}); };

  add(meta("AltFailure", {"F30"},
           "Failure of Success Criterion 1.1.1 and 1.2.1 due to using text alternatives that are "
           "not alternatives",
           true),
      check_alt_failure);
  add(meta("CaptionDataTbl", {"H39"},
           "Using caption elements to associate data table captions with data tables", true),
      check_caption_data_tbl);
  add(meta("ColorContrastFail", {"F24"},
           "Failure of Success Criterion 1.4.3, 1.4.6 and 1.4.8 due to specifying foreground "
           "colors without specifying background colors or vice versa",
           true),
      check_color_contrast_fail);
  add(meta("CombineAdj", {"H2"},
           "Combining adjacent image and text links for the same resource", true),
      check_combine_adj);
  add(meta("FocusRemoveFail", {"F55"},
           "Failure of Success Criteria 2.1.1, 2.4.7, and 3.2.1 due to using script to remove "
           "focus when focus is received",
           true),
      check_focus_remove);
  add(meta("FontSizeCSS", {"C12", "C13", "C14"}, "Using percent, em, names for font sizes", true),
      check_font_size_css);
  add(meta("HeadingsOrg", {"G141"}, "Organizing a page using headings", true),
      check_headings_org);
  add(meta("IdHeadersDataTbl", {"H43"},
           "Using id and headers attributes to associate data cells with header cells in data "
           "tables",
           true),
      check_id_headers_data_tbl);
  add(meta("ImgLinkFail", {"F89"},
           "Failure of Success Criteria 2.4.4, 2.4.9, and 4.1.2 due to not providing an "
           "accessible name for an image which is the only content in a link",
           true),
      check_img_link_fail);
  add(meta("LabelPos", {"G162"},
           "Positioning labels to maximize predictability of relationships", true),
      check_label_pos);
  add(meta("LayoutTblFail", {"F46"},
           "Failure of Success Criterion 1.3.1 due to using th elements, caption elements, or "
           "non-empty summary attributes in layout tables",
           true),
      check_layout_tbl_fail);
  add(meta("LinkTitleAttr", {"H33"}, "Supplementing link text with the title attribute", true),
      check_link_title_attr);
  add(meta("ListLinkGroups", {"H48"}, "Using ol, ul, and dl for lists or groups of links", true),
      check_list_link_groups);
  add(meta("ScopeDataTbl", {"H63"},
           "Using the scope attribute to associate header cells and data cells in data tables",
           true),
      check_scope_data_tbl);
  add(meta("SkipToMain", {"G1"},
           "Adding a link at the top of each page that goes directly to the main content area",
           true),
      check_skip_to_main);
  add(meta("SubmitBtn", {"H32"}, "Providing submit buttons", true), check_submit_btn);
  add(meta("TblMarkup", {"H51"}, "Using table markup to present tabular information", false),
      nullptr);
  return rules;
}

}  // namespace a11y::rules
