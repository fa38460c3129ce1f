#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "a11y/dom.hpp"
#include "a11y/text_util.hpp"

namespace a11y::dom {

const char* const kVoidElements[] = {
    "area", "base",  "br",   "col",  "embed",  "hr",    "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

bool is_void_element(std::string_view tag) {
  for (const char* v : kVoidElements) {
    if (tag == v) return true;
  }
  return false;
}

namespace {

bool is_tag_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_tag_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':';
}

bool is_rawtext_tag(std::string_view tag) {
  return tag == "script" || tag == "style" || tag == "textarea" ||
         tag == "title";
}

// Tags that implicitly close an open <p>.
bool closes_p(std::string_view tag) {
  static const char* const kTags[] = {
      "p",       "div",    "ul",      "ol",     "li",     "h1",   "h2",
      "h3",      "h4",     "h5",      "h6",     "table",  "form", "blockquote",
      "section", "article", "aside",  "header", "footer", "nav",  "main",
      "pre",     "hr",     "dl",      "dt",     "dd",     "fieldset"};
  for (const char* t : kTags) {
    if (tag == t) return true;
  }
  return false;
}

struct Parser {
  std::string_view src;
  Document& doc;
  std::vector<int> stack;  // doc_index chain; stack[0] is the root

  explicit Parser(std::string_view s, Document& d) : src(s), doc(d) {
    Element root;
    root.tag = "#document";
    root.span = {0, src.size()};
    root.open_tag_span = {0, 0};
    root.doc_index = 0;
    root.parent = -1;
    root.synthetic = true;
    doc.elements.push_back(std::move(root));
    stack.push_back(0);
  }

  Element& top() { return doc.elements[stack.back()]; }

  void add_text(size_t begin, size_t end) {
    if (begin >= end) return;
    doc.texts.push_back(TextNode{{begin, end}});
    doc.elements[stack.back()].children.push_back(
        NodeRef{NodeRef::Kind::kText, doc.texts.size() - 1});
  }

  // Closes the innermost open element. `end` is where its content stops,
  // `span_end` where its byte range stops (past the close tag if one exists).
  void close_top(size_t span_end) {
    Element& el = doc.elements[stack.back()];
    el.span.end = span_end;
    stack.pop_back();
  }

  void implied_end_tags(std::string_view tag, size_t at) {
    while (stack.size() > 1) {
      const std::string& t = top().tag;
      bool close = false;
      if (t == "p" && closes_p(tag)) close = true;
      else if (t == "li" && tag == "li") close = true;
      else if ((t == "dt" || t == "dd") && (tag == "dt" || tag == "dd"))
        close = true;
      else if (t == "option" && tag == "option") close = true;
      else if ((t == "td" || t == "th") &&
               (tag == "td" || tag == "th" || tag == "tr" || tag == "thead" ||
                tag == "tbody" || tag == "tfoot"))
        close = true;
      else if (t == "tr" && (tag == "tr" || tag == "thead" || tag == "tbody" ||
                             tag == "tfoot"))
        close = true;
      else if ((t == "thead" || t == "tbody" || t == "tfoot") &&
               (tag == "thead" || tag == "tbody" || tag == "tfoot"))
        close = true;
      if (!close) break;
      close_top(at);
    }
  }

  // Parses attributes starting at `pos` (after the tag name) until '>' or
  // EOF. Returns the offset one past '>' and sets `self_closing`.
  size_t parse_attributes(size_t pos, std::vector<Attribute>& attrs,
                          bool& self_closing) {
    self_closing = false;
    while (pos < src.size()) {
      while (pos < src.size() && is_ascii_space(src[pos])) ++pos;
      if (pos >= src.size()) break;
      if (src[pos] == '>') return pos + 1;
      if (src[pos] == '/') {
        size_t look = pos + 1;
        while (look < src.size() && is_ascii_space(src[look])) ++look;
        if (look < src.size() && src[look] == '>') {
          self_closing = true;
          return look + 1;
        }
        ++pos;
        continue;
      }
      size_t name_start = pos;
      while (pos < src.size() && !is_ascii_space(src[pos]) && src[pos] != '=' &&
             src[pos] != '>' && src[pos] != '/') {
        ++pos;
      }
      if (pos == name_start) {
        ++pos;
        continue;
      }
      Attribute attr;
      attr.name = to_lower_ascii(src.substr(name_start, pos - name_start));
      attr.name_span = {name_start, pos};
      size_t after_name = pos;
      while (after_name < src.size() && is_ascii_space(src[after_name]))
        ++after_name;
      if (after_name < src.size() && src[after_name] == '=') {
        size_t vpos = after_name + 1;
        while (vpos < src.size() && is_ascii_space(src[vpos])) ++vpos;
        if (vpos < src.size() && (src[vpos] == '"' || src[vpos] == '\'')) {
          char quote = src[vpos];
          size_t vstart = vpos + 1;
          size_t vend = src.find(quote, vstart);
          if (vend == std::string_view::npos) vend = src.size();
          attr.value = std::string(src.substr(vstart, vend - vstart));
          attr.value_span = {vstart, vend};
          attr.has_value = true;
          pos = (vend < src.size()) ? vend + 1 : vend;
        } else {
          size_t vstart = vpos;
          while (vpos < src.size() && !is_ascii_space(src[vpos]) &&
                 src[vpos] != '>') {
            ++vpos;
          }
          attr.value = std::string(src.substr(vstart, vpos - vstart));
          attr.value_span = {vstart, vpos};
          attr.has_value = true;
          pos = vpos;
        }
      } else {
        attr.value_span = {pos, pos};
      }
      bool duplicate = false;
      for (const Attribute& existing : attrs) {
        if (existing.name == attr.name) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) attrs.push_back(std::move(attr));
    }
    return src.size();
  }

  void handle_open_tag(size_t tag_start) {
    size_t pos = tag_start + 1;
    size_t name_start = pos;
    while (pos < src.size() && is_tag_name_char(src[pos])) ++pos;
    std::string tag = to_lower_ascii(src.substr(name_start, pos - name_start));

    std::vector<Attribute> attrs;
    bool self_closing = false;
    size_t after = parse_attributes(pos, attrs, self_closing);

    implied_end_tags(tag, tag_start);

    Element el;
    el.tag = tag;
    el.attributes = std::move(attrs);
    el.span = {tag_start, after};
    el.open_tag_span = {tag_start, after};
    el.doc_index = static_cast<int>(doc.elements.size());
    el.parent = stack.back();
    int idx = el.doc_index;
    doc.elements[stack.back()].children.push_back(
        NodeRef{NodeRef::Kind::kElement, static_cast<size_t>(idx)});
    doc.elements.push_back(std::move(el));
    cursor = after;

    if (self_closing || is_void_element(tag)) return;

    if (is_rawtext_tag(tag)) {
      // Raw text swallows everything until the matching close tag (or EOF).
      std::string needle = "</" + tag;
      size_t content_end = src.size();
      size_t close_end = src.size();
      for (size_t i = after; i + needle.size() <= src.size(); ++i) {
        if (!iequals(src.substr(i, needle.size()), needle)) continue;
        char next =
            (i + needle.size() < src.size()) ? src[i + needle.size()] : '>';
        if (next == '>' || is_ascii_space(next) || next == '/') {
          size_t gt = src.find('>', i);
          content_end = i;
          close_end = (gt == std::string_view::npos) ? src.size() : gt + 1;
          break;
        }
      }
      if (content_end > after) {
        doc.texts.push_back(TextNode{{after, content_end}});
        doc.elements[idx].children.push_back(
            NodeRef{NodeRef::Kind::kText, doc.texts.size() - 1});
      }
      doc.elements[idx].span.end = close_end;
      cursor = close_end;
      return;
    }

    stack.push_back(idx);
  }

  void handle_close_tag(size_t tag_start) {
    size_t pos = tag_start + 2;
    size_t name_start = pos;
    while (pos < src.size() && is_tag_name_char(src[pos])) ++pos;
    std::string tag = to_lower_ascii(src.substr(name_start, pos - name_start));
    size_t gt = src.find('>', pos);
    size_t end = (gt == std::string_view::npos) ? src.size() : gt + 1;

    // Find a matching open element; unmatched close tags become gap bytes.
    int match = -1;
    for (int i = static_cast<int>(stack.size()) - 1; i >= 1; --i) {
      if (doc.elements[stack[i]].tag == tag) {
        match = i;
        break;
      }
    }
    if (match >= 1) {
      while (static_cast<int>(stack.size()) > match + 1) {
        close_top(tag_start);  // auto-close mismatched inner elements
      }
      close_top(end);
    }
    cursor = end;
  }

  size_t cursor = 0;

  void run() {
    size_t text_start = 0;
    while (cursor < src.size()) {
      size_t lt = src.find('<', cursor);
      if (lt == std::string_view::npos) {
        add_text(text_start, src.size());
        cursor = src.size();
        break;
      }
      add_text(text_start, lt);
      text_start = lt;

      if (lt + 1 >= src.size()) {
        add_text(lt, src.size());
        cursor = src.size();
        text_start = src.size();
        break;
      }
      char next = src[lt + 1];
      if (next == '!' || next == '?') {
        // Comments, doctype, processing instructions: gap bytes.
        size_t end;
        if (src.substr(lt + 1, 3) == "!--") {
          size_t close = src.find("-->", lt + 4);
          end = (close == std::string_view::npos) ? src.size() : close + 3;
        } else {
          size_t close = src.find('>', lt + 1);
          end = (close == std::string_view::npos) ? src.size() : close + 1;
        }
        cursor = end;
        text_start = end;
        continue;
      }
      if (next == '/') {
        handle_close_tag(lt);
        text_start = cursor;
        continue;
      }
      if (is_tag_name_start(next)) {
        handle_open_tag(lt);
        text_start = cursor;
        continue;
      }
      // Literal '<' in text.
      size_t next_lt = src.find('<', lt + 1);
      size_t run_end = (next_lt == std::string_view::npos) ? src.size() : next_lt;
      add_text(lt, run_end);
      cursor = run_end;
      text_start = run_end;
    }
    // EOF closes everything still open.
    while (stack.size() > 1) close_top(src.size());
  }
};

// Best-effort charset sniff over the raw bytes.
std::string sniff_charset(std::string_view src) {
  std::string lower = to_lower_ascii(src.substr(0, std::min<size_t>(src.size(), 4096)));
  size_t meta = lower.find("charset");
  if (meta == std::string::npos) return "";
  size_t i = meta + 7;
  while (i < lower.size() && (is_ascii_space(lower[i]) || lower[i] == '=')) ++i;
  if (i < lower.size() && (lower[i] == '"' || lower[i] == '\'')) ++i;
  size_t b = i;
  while (i < lower.size() &&
         (std::isalnum(static_cast<unsigned char>(lower[i])) || lower[i] == '-' ||
          lower[i] == '_')) {
    ++i;
  }
  return lower.substr(b, i - b);
}

void attach_embedded_styles(Document& doc) {
  for (const Element& el : doc.elements) {
    if (el.synthetic) continue;
    if (el.tag == "style") {
      std::string content;
      size_t base = el.open_tag_span.end;
      for (const NodeRef& ref : el.children) {
        if (ref.kind == NodeRef::Kind::kText) {
          const TextNode& t = doc.texts[ref.index];
          base = t.span.start;
          content = std::string(doc.text_of(t));
          break;
        }
      }
      css::Stylesheet sheet = css::parse_css(
          content, css::Stylesheet::Origin::kStyleElement, base);
      sheet.owner_element = el.doc_index;
      doc.stylesheets.push_back(std::move(sheet));
    } else if (el.tag == "script") {
      for (const NodeRef& ref : el.children) {
        if (ref.kind == NodeRef::Kind::kText) {
          doc.inline_scripts.push_back(doc.texts[ref.index].span);
        }
      }
    } else if (el.tag == "link") {
      auto rel = el.attr("rel");
      auto href = el.attr("href");
      if (rel && iequals(trim_copy(*rel), "stylesheet") && href) {
        doc.stylesheet_links.push_back(
            StylesheetLink{std::string(*href), el.doc_index, false});
      }
    }
    const Attribute* style_attr = el.find_attr("style");
    if (style_attr && style_attr->has_value) {
      css::Stylesheet sheet;
      sheet.origin = css::Stylesheet::Origin::kInlineAttribute;
      sheet.owner_element = el.doc_index;
      css::DeclarationBlock block;
      block.declarations = css::parse_inline_declarations(
          style_attr->value, style_attr->value_span.start);
      block.span = style_attr->value_span;
      sheet.blocks.push_back(std::move(block));
      doc.stylesheets.push_back(std::move(sheet));
    }
  }
}

}  // namespace

const Attribute* Element::find_attr(std::string_view name) const {
  std::string lower = to_lower_ascii(name);
  for (const Attribute& attr : attributes) {
    if (attr.name == lower) return &attr;
  }
  return nullptr;
}

bool Element::has_attr(std::string_view name) const {
  return find_attr(name) != nullptr;
}

std::optional<std::string_view> Element::attr(std::string_view name) const {
  const Attribute* a = find_attr(name);
  if (!a) return std::nullopt;
  return std::string_view(a->value);
}

std::optional<std::string> Document::attr_decoded(const Element& el,
                                                  std::string_view name) const {
  auto raw = el.attr(name);
  if (!raw) return std::nullopt;
  return collapse_ws(decode_entities(*raw));
}

const Element* Document::first_of_tag(std::string_view tag) const {
  for (const Element& el : elements) {
    if (!el.synthetic && el.tag == tag) return &el;
  }
  return nullptr;
}

std::string Document::css_path(const Element& el) const {
  if (el.synthetic) return "";
  std::vector<std::string> parts;
  const Element* cur = &el;
  while (cur && !cur->synthetic) {
    std::string part = cur->tag;
    if (const Attribute* id = cur->find_attr("id");
        id && !trim_copy(id->value).empty()) {
      part += "#" + trim_copy(id->value);
    } else if (cur->parent >= 0) {
      // nth-of-type among same-tag element siblings, only when ambiguous
      const Element& parent = elements[cur->parent];
      int nth = 0;
      int same_tag = 0;
      for (const NodeRef& ref : parent.children) {
        if (ref.kind != NodeRef::Kind::kElement) continue;
        const Element& sib = elements[ref.index];
        if (sib.tag == cur->tag) {
          ++same_tag;
          if (sib.doc_index == cur->doc_index) nth = same_tag;
        }
      }
      if (same_tag > 1) part += ":nth-of-type(" + std::to_string(nth) + ")";
    }
    parts.push_back(part);
    cur = (cur->parent >= 0) ? &elements[cur->parent] : nullptr;
  }
  std::string out;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (!out.empty()) out += " > ";
    out += *it;
  }
  return out;
}

Document parse_html(std::string_view source, std::string_view path) {
  Document doc;
  doc.source = std::string(source);
  doc.path = std::string(path);

  std::string charset = sniff_charset(source);
  bool expect_utf8 = charset.empty() || charset == "utf-8" ||
                     charset == "utf8" || charset == "us-ascii" ||
                     charset == "ascii";
  if (expect_utf8) {
    size_t bad = 0;
    if (!validate_utf8(source, &bad)) {
      throw ParseError("undecodable byte sequence (expected UTF-8)", bad);
    }
  }

  Parser parser(doc.source, doc);
  parser.run();
  attach_embedded_styles(doc);
  return doc;
}

namespace {

void serialize_node(const Document& doc, const NodeRef& ref, std::string& out);

void serialize_element(const Document& doc, const Element& el,
                       std::string& out) {
  if (!el.synthetic) out += doc.slice(el.open_tag_span);
  size_t cursor = el.synthetic ? el.span.start : el.open_tag_span.end;
  for (const NodeRef& ref : el.children) {
    const SourceSpan& child_span = (ref.kind == NodeRef::Kind::kElement)
                                       ? doc.elements[ref.index].span
                                       : doc.texts[ref.index].span;
    if (child_span.start > cursor) {
      out += doc.slice({cursor, child_span.start});  // gap bytes
    }
    serialize_node(doc, ref, out);
    cursor = child_span.end;
  }
  if (el.span.end > cursor) out += doc.slice({cursor, el.span.end});
}

void serialize_node(const Document& doc, const NodeRef& ref, std::string& out) {
  if (ref.kind == NodeRef::Kind::kText) {
    out += doc.slice(doc.texts[ref.index].span);
  } else {
    serialize_element(doc, doc.elements[ref.index], out);
  }
}

}  // namespace

std::string serialize(const Document& doc) {
  std::string out;
  out.reserve(doc.source.size());
  serialize_element(doc, doc.root(), out);
  return out;
}

std::string raw_text_content(const Document& doc, const Element& el) {
  std::string out;
  for (const NodeRef& ref : el.children) {
    if (ref.kind == NodeRef::Kind::kText) {
      out += doc.slice(doc.texts[ref.index].span);
    } else {
      out += raw_text_content(doc, doc.elements[ref.index]);
    }
  }
  return out;
}

Document load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Document doc = parse_html(buf.str(), path);

  namespace fs = std::filesystem;
  fs::path dir = fs::path(path).parent_path();
  for (StylesheetLink& link : doc.stylesheet_links) {
    std::string href = trim_copy(link.href);
    bool external = starts_with(href, "http:") || starts_with(href, "https:") ||
                    starts_with(href, "//");
    fs::path candidate = dir / href;
    std::error_code ec;
    if (!external && fs::is_regular_file(candidate, ec)) {
      std::ifstream css_in(candidate, std::ios::binary);
      std::ostringstream css_buf;
      css_buf << css_in.rdbuf();
      css::Stylesheet sheet = css::parse_css(
          css_buf.str(), css::Stylesheet::Origin::kExternalFile, 0);
      sheet.source_path = candidate.string();
      sheet.owner_element = link.owner_element;
      link.resolved = true;
      doc.stylesheets.push_back(std::move(sheet));
    } else {
      doc.unresolved_refs.push_back(href);
    }
  }
  // Keep cascade order deterministic: sheets sorted by owning element.
  std::stable_sort(doc.stylesheets.begin(), doc.stylesheets.end(),
                   [](const css::Stylesheet& a, const css::Stylesheet& b) {
                     return a.owner_element < b.owner_element;
                   });
  return doc;
}

}  // namespace a11y::dom
