#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <set>

#include "a11y/css.hpp"
#include "a11y/dom.hpp"
#include "a11y/segmenter.hpp"
#include "a11y/text_util.hpp"

namespace a11y::seg {

namespace {

std::string lower_extension(const std::string& path) {
  size_t dot = path.rfind('.');
  size_t slash = path.find_last_of("/\\");
  if (dot == std::string::npos) return "";
  if (slash != std::string::npos && dot < slash) return "";
  return to_lower_ascii(path.substr(dot));
}

const char* const kKnownTags[] = {
    "html", "head",  "body",   "div",    "span",  "p",     "a",      "img",
    "ul",   "ol",    "li",     "table",  "form",  "input", "button", "select",
    "h1",   "h2",    "h3",     "h4",     "h5",    "h6",    "label",  "textarea",
    "nav",  "main",  "header", "footer", "section", "article", "aside",
    "iframe", "svg", "style",  "script", "title"};

// Looks for "<tag" followed by a delimiter; good enough to tell HTML apart
// from the occasional less-than sign in code or prose.
std::optional<std::string> find_html_tag(std::string_view content) {
  std::string lower = to_lower_ascii(content);
  for (const char* tag : kKnownTags) {
    std::string needle = std::string("<") + tag;
    size_t pos = 0;
    while ((pos = lower.find(needle, pos)) != std::string::npos) {
      size_t after = pos + needle.size();
      if (after >= lower.size() || lower[after] == '>' ||
          lower[after] == ' ' || lower[after] == '\t' || lower[after] == '\n' ||
          lower[after] == '\r' || lower[after] == '/') {
        return std::string(tag);
      }
      ++pos;
    }
  }
  return std::nullopt;
}

bool looks_binary(std::string_view content) {
  if (content.find('\0') != std::string_view::npos) return true;
  return !validate_utf8(content);
}

std::string block_id(const std::string& path, int ordinal) {
  return path + "#" + std::to_string(ordinal);
}

void push_block(std::vector<CodeBlock>& blocks, const std::string& path,
                std::string_view content, const std::string& kind,
                SourceSpan span) {
  if (span.empty()) return;
  CodeBlock block;
  block.ordinal = static_cast<int>(blocks.size());
  block.id = block_id(path, block.ordinal);
  block.kind = kind;
  block.span = span;
  block.content = std::string(content.substr(span.start, span.length()));
  blocks.push_back(std::move(block));
}

std::vector<CodeBlock> segment_html(const std::string& path,
                                    std::string_view content) {
  dom::Document doc = dom::parse_html(content, path);
  static const char* const kStructural[] = {"section", "header", "nav", "main",
                                            "div"};
  auto is_structural = [](const std::string& tag) {
    for (const char* t : kStructural) {
      if (tag == t) return true;
    }
    return false;
  };

  std::vector<SourceSpan> spans;
  for (const dom::Element& el : doc.elements) {
    if (el.synthetic || !is_structural(el.tag)) continue;
    bool nested = false;
    int parent = el.parent;
    while (parent >= 0) {
      const dom::Element& anc = doc.elements[parent];
      if (!anc.synthetic && is_structural(anc.tag)) {
        nested = true;
        break;
      }
      parent = anc.parent;
    }
    if (!nested) spans.push_back(el.span);
  }

  std::vector<CodeBlock> blocks;
  if (spans.empty()) {
    push_block(blocks, path, content, "html-preamble", {0, content.size()});
    return blocks;
  }
  size_t cursor = 0;
  bool first = true;
  for (const SourceSpan& span : spans) {
    if (span.start > cursor) {
      push_block(blocks, path, content, first ? "html-preamble" : "opaque",
                 {cursor, span.start});
    }
    push_block(blocks, path, content, "html-structural", span);
    cursor = span.end;
    first = false;
  }
  if (cursor < content.size()) {
    push_block(blocks, path, content, "opaque", {cursor, content.size()});
  }
  return blocks;
}

std::vector<CodeBlock> segment_css(const std::string& path,
                                   std::string_view content) {
  css::Stylesheet sheet = css::parse_css(content);
  std::vector<CodeBlock> blocks;
  size_t cursor = 0;
  for (const css::DeclarationBlock& block : sheet.blocks) {
    if (block.span.start > cursor) {
      push_block(blocks, path, content, "opaque", {cursor, block.span.start});
    }
    push_block(blocks, path, content,
               block.at_rule ? "opaque" : "css-declaration-block", block.span);
    cursor = block.span.end;
  }
  if (cursor < content.size()) {
    push_block(blocks, path, content, "opaque", {cursor, content.size()});
  }
  return blocks;
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Skips a string/template/comment starting at pos; returns one past its end.
size_t skip_js_literal(std::string_view s, size_t pos) {
  char c = s[pos];
  if (c == '"' || c == '\'') {
    ++pos;
    while (pos < s.size() && s[pos] != c && s[pos] != '\n') {
      if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
      ++pos;
    }
    return pos < s.size() ? pos + 1 : pos;
  }
  if (c == '`') {
    ++pos;
    while (pos < s.size() && s[pos] != '`') {
      if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
      ++pos;
    }
    return pos < s.size() ? pos + 1 : pos;
  }
  if (c == '/' && pos + 1 < s.size()) {
    if (s[pos + 1] == '/') {
      size_t nl = s.find('\n', pos);
      return nl == std::string_view::npos ? s.size() : nl + 1;
    }
    if (s[pos + 1] == '*') {
      size_t close = s.find("*/", pos + 2);
      return close == std::string_view::npos ? s.size() : close + 2;
    }
  }
  return pos + 1;
}

// Finds the end of a brace-balanced body starting at `open_brace`.
size_t match_brace(std::string_view s, size_t open_brace) {
  int depth = 0;
  size_t pos = open_brace;
  while (pos < s.size()) {
    char c = s[pos];
    if (c == '"' || c == '\'' || c == '`' ||
        (c == '/' && pos + 1 < s.size() &&
         (s[pos + 1] == '/' || s[pos + 1] == '*'))) {
      pos = skip_js_literal(s, pos);
      continue;
    }
    if (c == '{') ++depth;
    if (c == '}') {
      --depth;
      if (depth == 0) return pos + 1;
    }
    ++pos;
  }
  return s.size();
}

std::vector<CodeBlock> segment_js(const std::string& path,
                                  std::string_view content) {
  struct Decl {
    size_t start;
    size_t end;
    bool is_class;
  };
  std::vector<Decl> decls;

  size_t pos = 0;
  int depth = 0;
  while (pos < content.size()) {
    char c = content[pos];
    if (c == '"' || c == '\'' || c == '`' ||
        (c == '/' && pos + 1 < content.size() &&
         (content[pos + 1] == '/' || content[pos + 1] == '*'))) {
      pos = skip_js_literal(content, pos);
      continue;
    }
    if (c == '{') {
      ++depth;
      ++pos;
      continue;
    }
    if (c == '}') {
      --depth;
      ++pos;
      continue;
    }
    if (depth == 0 && is_ident_char(c) &&
        (pos == 0 || !is_ident_char(content[pos - 1]))) {
      size_t word_end = pos;
      while (word_end < content.size() && is_ident_char(content[word_end]))
        ++word_end;
      std::string_view word = content.substr(pos, word_end - pos);
      size_t decl_start = pos;
      bool is_function = false;
      bool is_class = false;
      if (word == "async") {
        size_t look = word_end;
        while (look < content.size() && is_ascii_space(content[look])) ++look;
        if (content.substr(look, 8) == "function" &&
            (look + 8 >= content.size() || !is_ident_char(content[look + 8]))) {
          is_function = true;
          word_end = look + 8;
        }
      } else if (word == "function") {
        is_function = true;
      } else if (word == "class") {
        is_class = true;
      }
      if (is_function || is_class) {
        size_t brace = word_end;
        int paren_depth = 0;
        while (brace < content.size()) {
          char bc = content[brace];
          if (bc == '"' || bc == '\'' || bc == '`' ||
              (bc == '/' && brace + 1 < content.size() &&
               (content[brace + 1] == '/' || content[brace + 1] == '*'))) {
            brace = skip_js_literal(content, brace);
            continue;
          }
          if (bc == '(') ++paren_depth;
          if (bc == ')') --paren_depth;
          if (bc == '{' && paren_depth == 0) break;
          if (bc == ';') break;  // declaration without body; not a block
          ++brace;
        }
        if (brace < content.size() && content[brace] == '{') {
          size_t end = match_brace(content, brace);
          decls.push_back(Decl{decl_start, end, is_class});
          pos = end;
          continue;
        }
      }
      pos = word_end;
      continue;
    }
    ++pos;
  }

  std::vector<CodeBlock> blocks;
  size_t cursor = 0;
  for (const Decl& d : decls) {
    if (d.start > cursor) {
      push_block(blocks, path, content, "opaque", {cursor, d.start});
    }
    push_block(blocks, path, content, d.is_class ? "js-class" : "js-function",
               {d.start, d.end});
    cursor = d.end;
  }
  if (cursor < content.size()) {
    push_block(blocks, path, content, "opaque", {cursor, content.size()});
  }
  return blocks;
}

}  // namespace

UiFileVerdict detect_ui_file(const std::string& path, std::string_view content,
                             const DetectorConfig& config) {
  UiFileVerdict verdict;
  std::string ext = lower_extension(path);
  if (ext == ".html" || ext == ".htm" || ext == ".css" || ext == ".js") {
    verdict.reasons.push_back("extension:" + ext);
  }
  if (looks_binary(content)) {
    verdict.error = "undecodable";
  } else {
    for (const std::string& marker : config.markers) {
      if (content.find(marker) != std::string_view::npos) {
        verdict.reasons.push_back("marker:" + marker);
      }
    }
    if (auto tag = find_html_tag(content)) {
      verdict.reasons.push_back("html-tag:" + *tag);
    }
  }
  verdict.is_ui = !verdict.reasons.empty();
  return verdict;
}

std::vector<CodeBlock> segment(const std::string& path,
                               std::string_view content) {
  if (content.empty()) return {};
  std::string ext = lower_extension(path);
  if (ext == ".html" || ext == ".htm") return segment_html(path, content);
  if (ext == ".css") return segment_css(path, content);
  if (ext == ".js") return segment_js(path, content);
  std::vector<CodeBlock> blocks;
  push_block(blocks, path, content, "opaque", {0, content.size()});
  return blocks;
}

std::string reassemble(const std::vector<CodeBlock>& blocks) {
  std::set<std::string> seen;
  for (size_t i = 0; i < blocks.size(); ++i) {
    const CodeBlock& block = blocks[i];
    if (block.ordinal != static_cast<int>(i)) {
      throw StructureError("block list out of order or incomplete: expected "
                           "ordinal " +
                           std::to_string(i) + ", got " +
                           std::to_string(block.ordinal) + " (" + block.id +
                           ")");
    }
    if (!seen.insert(block.id).second) {
      throw StructureError("duplicate block id: " + block.id);
    }
    std::string expected = block_id(block.id.substr(0, block.id.rfind('#')),
                                    block.ordinal);
    if (block.id != expected) {
      throw StructureError("block id does not match its ordinal: " + block.id);
    }
  }
  std::string out;
  for (const CodeBlock& block : blocks) out += block.content;
  return out;
}

namespace {

// Acklam's rational approximation of the standard normal quantile.
double inverse_normal_cdf(double p) {
  if (p <= 0.0 || p >= 1.0) {
    throw ConfigError("quantile probability out of range");
  }
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  const double phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p <= phigh) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  }
  q = std::sqrt(-2 * std::log(1 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
}

}  // namespace

size_t sample_size(size_t population, double confidence, double margin) {
  if (population == 0) throw ConfigError("population must be positive");
  if (confidence <= 0.0 || confidence >= 1.0) {
    throw ConfigError("confidence must be in (0, 1)");
  }
  if (margin <= 0.0 || margin >= 1.0) {
    throw ConfigError("margin must be in (0, 1)");
  }
  double z = inverse_normal_cdf(1.0 - (1.0 - confidence) / 2.0);
  double n0 = z * z * 0.25 / (margin * margin);
  double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  auto rounded = static_cast<size_t>(std::ceil(n));
  return std::min(rounded, population);
}

std::vector<size_t> seeded_sample(size_t population, size_t n, uint64_t seed) {
  if (n > population) {
    throw ConfigError("sample larger than population");
  }
  std::vector<size_t> indexes(population);
  for (size_t i = 0; i < population; ++i) indexes[i] = i;
  // Partial Fisher-Yates. mt19937_64 output and modulo reduction are both
  // fully specified, so the selection reproduces on any platform.
  std::mt19937_64 rng(seed);
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(rng() % (population - i));
    std::swap(indexes[i], indexes[j]);
  }
  std::vector<size_t> out(indexes.begin(), indexes.begin() + n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace a11y::seg
