#include "a11y/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "a11y/color.hpp"
#include "a11y/core.hpp"
#include "a11y/dom.hpp"
#include "a11y/style_resolver.hpp"
#include "a11y/text_util.hpp"

namespace a11y::gateway {

namespace {

using style::composite_over;
using style::contrast_ratio;
using style::Hsl;
using style::hsl_to_rgb;
using style::parse_color;
using style::Rgba;
using style::rgb_to_hsl;
using style::to_hex;

struct Edit {
  size_t pos = 0;
  size_t erase = 0;
  std::string text;
};

const dom::Element* element_at(const dom::Document& doc, const rules::Finding& f) {
  for (const auto& el : doc.elements) {
    if (!el.synthetic && el.span.start == f.span.start) return &el;
  }
  const dom::Element* best = nullptr;
  for (const auto& el : doc.elements) {
    if (el.synthetic || !el.span.contains(f.span.start)) continue;
    if (!best || el.span.length() < best->span.length()) best = &el;
  }
  return best;
}

// insertion point for a new attribute, right after the tag name
size_t attr_insert_pos(const dom::Element& el) {
  return el.span.start + 1 + el.tag.size();
}

std::string escape_attr(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"')
      out += "&quot;";
    else if (c == '&')
      out += "&amp;";
    else
      out += c;
  }
  return out;
}

std::string humanize(std::string_view raw, const std::string& fallback) {
  std::string out;
  for (char c : raw) out += (c == '-' || c == '_') ? ' ' : c;
  out = collapse_ws(out);
  return out.empty() ? fallback : out;
}

std::string stem_of(std::string_view src) {
  auto cut = src.find_first_of("?#");
  if (cut != std::string_view::npos) src = src.substr(0, cut);
  auto slash = src.find_last_of("/\\");
  if (slash != std::string_view::npos) src = src.substr(slash + 1);
  auto dot = src.rfind('.');
  if (dot != std::string_view::npos && dot > 0) src = src.substr(0, dot);
  return std::string(src);
}

size_t find_ci(std::string_view haystack, std::string_view needle, size_t from) {
  if (needle.empty() || haystack.size() < needle.size()) return std::string_view::npos;
  for (size_t i = from; i + needle.size() <= haystack.size(); ++i) {
    size_t j = 0;
    while (j < needle.size() &&
           ascii_lower(haystack[i + j]) == ascii_lower(needle[j]))
      ++j;
    if (j == needle.size()) return i;
  }
  return std::string_view::npos;
}

// position of "</tag" within the element, for inserting before the close tag
std::optional<size_t> close_tag_pos(std::string_view code, const dom::Element& el) {
  std::string needle = "</" + el.tag;
  auto hay = code.substr(0, std::min(el.span.end, code.size()));
  size_t found = std::string_view::npos;
  size_t at = el.span.start;
  while (true) {
    auto next = find_ci(hay, needle, at);
    if (next == std::string_view::npos) break;
    found = next;
    at = next + 1;
  }
  if (found == std::string_view::npos) return std::nullopt;
  return found;
}

std::string format_rem(double rem) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.4f", rem);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s + "rem";
}

bool fix_html_lang(const dom::Document& doc, std::vector<Edit>& edits) {
  const auto* html = doc.first_of_tag("html");
  if (!html) return false;
  const auto* lang = html->find_attr("lang");
  if (!lang) lang = html->find_attr("xml:lang");
  if (lang) {
    if (!collapse_ws(lang->value).empty()) return false;  // already fine
    if (lang->has_value && !lang->value_span.empty())
      edits.push_back({lang->value_span.start, lang->value_span.length(), "en"});
    else if (lang->has_value)
      edits.push_back({lang->value_span.start, 0, "en"});
    else
      edits.push_back({lang->name_span.end, 0, "=\"en\""});
    return true;
  }
  edits.push_back({attr_insert_pos(*html), 0, " lang=\"en\""});
  return true;
}

bool fix_img_alt(const dom::Element& el, std::vector<Edit>& edits) {
  if (el.tag != "img" || el.has_attr("alt")) return false;
  auto src = el.attr("src").value_or("");
  auto text = humanize(stem_of(src), "illustration");
  edits.push_back({attr_insert_pos(el), 0, " alt=\"" + escape_attr(text) + "\""});
  return true;
}

bool fix_frame_title(const dom::Document& doc, const dom::Element& el,
                     std::set<std::string>& used, std::vector<Edit>& edits) {
  if (el.tag != "iframe" && el.tag != "frame") return false;
  auto current = collapse_ws(el.attr("title").value_or(""));
  if (!current.empty()) {
    int same = 0;
    for (const auto& other : doc.elements) {
      if (other.synthetic || (other.tag != "iframe" && other.tag != "frame")) continue;
      if (collapse_ws(other.attr("title").value_or("")) == current) ++same;
    }
    if (same <= 1) return false;  // unique already
  }
  std::string fresh = "Embedded content";
  for (int n = 2; used.count(fresh); ++n)
    fresh = "Embedded content " + std::to_string(n);
  used.insert(fresh);
  const auto* title = el.find_attr("title");
  if (title && title->has_value)
    edits.push_back({title->value_span.start, title->value_span.length(), fresh});
  else
    edits.push_back({attr_insert_pos(el), 0, " title=\"" + fresh + "\""});
  return true;
}

bool fix_page_title(const dom::Document& doc, std::string_view code,
                    std::vector<Edit>& edits) {
  static const std::string kText = "Generated page";
  const auto* title = doc.first_of_tag("title");
  if (title) {
    if (!collapse_ws(dom::raw_text_content(doc, *title)).empty()) return false;
    auto close = close_tag_pos(code, *title);
    edits.push_back({close.value_or(title->open_tag_span.end), 0, kText});
    return true;
  }
  if (const auto* head = doc.first_of_tag("head")) {
    edits.push_back({head->open_tag_span.end, 0, "<title>" + kText + "</title>"});
    return true;
  }
  if (const auto* html = doc.first_of_tag("html")) {
    edits.push_back(
        {html->open_tag_span.end, 0, "<head><title>" + kText + "</title></head>"});
    return true;
  }
  return false;
}

bool fix_input_label(const dom::Element& el, std::vector<Edit>& edits) {
  if (el.has_attr("aria-label") || el.has_attr("aria-labelledby") ||
      el.has_attr("title"))
    return false;
  auto raw = el.attr("name");
  if (!raw) raw = el.attr("id");
  if (!raw) raw = el.attr("type");
  auto text = humanize(raw.value_or(""), "field");
  edits.push_back({attr_insert_pos(el), 0, " aria-label=\"" + escape_attr(text) + "\""});
  return true;
}

bool fix_contrast(const dom::Document& doc, style::StyleResolver& resolver,
                  const dom::Element& el, const nlohmann::json& evidence,
                  std::vector<Edit>& edits) {
  const auto* pv = resolver.resolve(el.doc_index).get("color");
  if (!pv || pv->inherited ||
      pv->origin != css::Stylesheet::Origin::kInlineAttribute ||
      pv->sheet_index < 0 ||
      doc.stylesheets[pv->sheet_index].owner_element != el.doc_index)
    return false;  // winning declaration is not this element's own style attr

  auto bg = parse_color(evidence.value("background", ""));
  if (!bg) bg = resolver.effective_background(el.doc_index);
  if (!bg) return false;
  double threshold = evidence.value("threshold", 0.0);
  if (threshold <= 0) threshold = resolver.is_large_text(el.doc_index) ? 3.0 : 4.5;

  auto fg = parse_color(pv->value);
  if (!fg) return false;
  Rgba flat = fg->a < 1.0 ? composite_over(*fg, *bg) : *fg;
  if (contrast_ratio(flat, *bg) >= threshold) return false;  // already passes

  // walk lightness toward whichever pole has more headroom, keeping hue
  Rgba black{0, 0, 0};
  Rgba white{255, 255, 255};
  bool darken = contrast_ratio(black, *bg) >= contrast_ratio(white, *bg);
  Hsl hsl = rgb_to_hsl(flat);
  double lo = hsl.l;
  double hi = darken ? 0.0 : 1.0;
  auto at = [&](double l) { return hsl_to_rgb({hsl.h, hsl.s, l}); };
  if (contrast_ratio(at(hi), *bg) < threshold) {
    // hue cannot reach the threshold; fall back to the pure pole
    Rgba pole = darken ? black : white;
    if (contrast_ratio(pole, *bg) < threshold) return false;
    edits.push_back({pv->value_span.start, pv->value_span.length(), to_hex(pole)});
    return true;
  }
  for (int i = 0; i < 40; ++i) {
    double mid = (lo + hi) / 2;
    if (contrast_ratio(at(mid), *bg) >= threshold)
      hi = mid;
    else
      lo = mid;
  }
  Rgba fixed = at(hi);  // 8-bit rounded by hsl_to_rgb; hi verified passing
  edits.push_back({pv->value_span.start, pv->value_span.length(), to_hex(fixed)});
  return true;
}

double px_factor(std::string_view unit) {
  if (unit == "px") return 1.0;
  if (unit == "pt") return 4.0 / 3.0;
  if (unit == "cm") return 96.0 / 2.54;
  if (unit == "mm") return 96.0 / 25.4;
  if (unit == "in") return 96.0;
  return 0.0;
}

bool fix_font_size(std::string_view code, const rules::Finding& f,
                   std::vector<Edit>& edits) {
  size_t end = std::min(f.span.end, code.size());
  bool changed = false;
  size_t at = f.span.start;
  while (at < end) {
    auto hit = find_ci(code, "font-size", at);
    if (hit == std::string_view::npos || hit >= end) break;
    at = hit + 9;
    size_t p = at;
    while (p < end && is_ascii_space(code[p])) ++p;
    if (p >= end || code[p] != ':') continue;
    ++p;
    while (p < end && is_ascii_space(code[p])) ++p;
    size_t num_start = p;
    if (p < end && (code[p] == '+' || code[p] == '-')) ++p;
    size_t digits = p;
    while (p < end && (isdigit((unsigned char)code[p]) || code[p] == '.')) ++p;
    if (p == digits) continue;  // keyword value, leave alone
    size_t unit_start = p;
    while (p < end && isalpha((unsigned char)code[p])) ++p;
    std::string unit = to_lower_ascii(code.substr(unit_start, p - unit_start));
    double factor = px_factor(unit);
    if (factor == 0.0) continue;
    double number = std::strtod(std::string(code.substr(num_start, unit_start - num_start)).c_str(), nullptr);
    double rem = number * factor / 16.0;
    edits.push_back({num_start, p - num_start, format_rem(rem)});
    changed = true;
    at = p;
  }
  return changed;
}

bool has_submit_control(const dom::Document& doc, const dom::Element& form) {
  for (const auto& el : doc.elements) {
    if (el.synthetic) continue;
    bool inside = false;
    for (int a = el.parent; a >= 0; a = doc.elements[a].parent) {
      if (a == form.doc_index) {
        inside = true;
        break;
      }
      if (a == 0) break;
    }
    if (!inside) continue;
    auto type = to_lower_ascii(collapse_ws(el.attr("type").value_or("")));
    if (el.tag == "input" && (type == "submit" || type == "image")) return true;
    if (el.tag == "button" && (type.empty() || type == "submit")) return true;
  }
  return false;
}

bool fix_submit(const dom::Document& doc, std::string_view code,
                const dom::Element& el, std::vector<Edit>& edits) {
  if (el.tag != "form" || has_submit_control(doc, el)) return false;
  auto close = close_tag_pos(code, el);
  edits.push_back({close.value_or(el.span.end), 0,
                   "<button type=\"submit\">Submit</button>"});
  return true;
}

}  // namespace

const std::set<std::string>& oracle_supported_rules() {
  static const std::set<std::string> kRules = {
      "html_lang_exists",  "img_alt_valid",      "frame_title_exists",
      "page_title_exists", "input_label_exists", "text_contrast_sufficient",
      "FontSizeCSS",       "SubmitBtn",
  };
  return kRules;
}

std::string oracle_rewrite(const std::string& code,
                           const std::vector<rules::Finding>& findings) {
  if (findings.empty()) return code;
  auto doc = dom::parse_html(code);
  style::StyleResolver resolver(doc);

  std::set<std::string> used_titles;
  for (const auto& el : doc.elements) {
    if (el.synthetic || (el.tag != "iframe" && el.tag != "frame")) continue;
    auto t = collapse_ws(el.attr("title").value_or(""));
    if (!t.empty()) used_titles.insert(t);
  }

  auto ordered = findings;
  std::sort(ordered.begin(), ordered.end(),
            [](const rules::Finding& a, const rules::Finding& b) {
              return a.span.start < b.span.start;
            });

  std::vector<Edit> edits;
  for (const auto& f : ordered) {
    if (!oracle_supported_rules().count(f.rule_id)) continue;
    if (f.rule_id == "html_lang_exists") {
      fix_html_lang(doc, edits);
      continue;
    }
    if (f.rule_id == "page_title_exists") {
      fix_page_title(doc, code, edits);
      continue;
    }
    if (f.rule_id == "FontSizeCSS") {
      fix_font_size(code, f, edits);
      continue;
    }
    const auto* el = element_at(doc, f);
    if (!el) continue;
    if (f.rule_id == "img_alt_valid") fix_img_alt(*el, edits);
    else if (f.rule_id == "frame_title_exists") fix_frame_title(doc, *el, used_titles, edits);
    else if (f.rule_id == "input_label_exists") fix_input_label(*el, edits);
    else if (f.rule_id == "text_contrast_sufficient") fix_contrast(doc, resolver, *el, f.evidence, edits);
    else if (f.rule_id == "SubmitBtn") fix_submit(doc, code, *el, edits);
  }

  std::stable_sort(edits.begin(), edits.end(),
                   [](const Edit& a, const Edit& b) { return a.pos > b.pos; });
  std::string out = code;
  size_t last_start = std::string::npos;
  for (const auto& e : edits) {
    if (e.pos + e.erase > out.size()) continue;
    if (last_start != std::string::npos && e.pos + e.erase > last_start)
      continue;  // overlapping edit, drop the later-queued one
    out.replace(e.pos, e.erase, e.text);
    last_start = e.pos;
  }
  return out;
}

std::vector<FencedBlock> extract_fences(std::string_view text) {
  std::vector<FencedBlock> fences;
  size_t pos = 0;
  bool open = false;
  FencedBlock current;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    auto line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                               : eol - pos);
    auto stripped = trim_copy(line);
    if (stripped.rfind("```", 0) == 0) {
      if (!open) {
        open = true;
        current.info = trim_copy(stripped.substr(3));
        current.body.clear();
      } else {
        if (!current.body.empty() && current.body.back() == '\n')
          current.body.pop_back();
        fences.push_back(current);
        open = false;
      }
    } else if (open) {
      current.body.append(line);
      current.body.push_back('\n');
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  if (open) {  // unterminated fence runs to the end of the text
    if (!current.body.empty() && current.body.back() == '\n') current.body.pop_back();
    fences.push_back(current);
  }
  return fences;
}

std::string OracleBackend::generate(const GenerationRequest& request) {
  if (request.messages.empty()) throw ConfigError("empty message list");
  std::string prompt;
  for (const auto& m : request.messages) {
    prompt += m.content;
    prompt += "\n";
  }
  auto fences = extract_fences(prompt);
  const FencedBlock* report = nullptr;
  const FencedBlock* code = nullptr;
  for (const auto& f : fences) {
    if (f.info == "json") report = &f;
    if (f.info == "html" || f.info == "css") code = &f;
  }
  if (!report || !code)
    throw BackendError("prompt has no report/code fences to rewrite");

  auto j = nlohmann::json::parse(report->body, nullptr, false);
  if (j.is_discarded()) throw BackendError("report fence is not valid JSON");
  const auto& list = j.is_array() ? j : j.at("findings");
  std::vector<rules::Finding> findings;
  for (const auto& item : list) {
    rules::Finding f;
    f.rule_id = item.at("rule_id").get<std::string>();
    f.span.start = item.at("span").at("start").get<size_t>();
    f.span.end = item.at("span").at("end").get<size_t>();
    f.message = item.value("message", "");
    f.path = item.value("path", "");
    f.evidence = item.value("evidence", nlohmann::json::object());
    if (f.evidence.contains("key")) f.key = f.evidence["key"].get<long>();
    findings.push_back(std::move(f));
  }

  auto fixed = oracle_rewrite(code->body, findings);
  return "```" + code->info + "\n" + fixed + "\n```";
}

}  // namespace a11y::gateway
