#include <cctype>

#include "a11y/css.hpp"
#include "a11y/text_util.hpp"

namespace a11y::css {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Advances past /* ... */ comments and whitespace.
void skip_ws_and_comments(std::string_view s, size_t& pos) {
  while (pos < s.size()) {
    if (is_ascii_space(s[pos])) {
      ++pos;
    } else if (pos + 1 < s.size() && s[pos] == '/' && s[pos + 1] == '*') {
      size_t close = s.find("*/", pos + 2);
      pos = (close == std::string_view::npos) ? s.size() : close + 2;
    } else {
      break;
    }
  }
}

// Scans forward until `stop` at nesting depth zero, honoring strings,
// comments, parentheses and braces. Returns npos when not found.
size_t find_at_depth0(std::string_view s, size_t pos, char stop) {
  int depth = 0;
  while (pos < s.size()) {
    char c = s[pos];
    if (c == '"' || c == '\'') {
      char q = c;
      ++pos;
      while (pos < s.size() && s[pos] != q) {
        if (s[pos] == '\\' && pos + 1 < s.size()) ++pos;
        ++pos;
      }
      if (pos < s.size()) ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < s.size() && s[pos + 1] == '*') {
      size_t close = s.find("*/", pos + 2);
      pos = (close == std::string_view::npos) ? s.size() : close + 2;
      continue;
    }
    if (depth == 0 && c == stop) return pos;
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    ++pos;
  }
  return std::string_view::npos;
}

CompoundSelector parse_compound(std::string_view token, bool* ok) {
  CompoundSelector out;
  *ok = true;
  size_t i = 0;
  if (i < token.size() && token[i] == '*') {
    ++i;
  } else if (i < token.size() && is_ident_char(token[i]) && token[i] != '-') {
    size_t b = i;
    while (i < token.size() && is_ident_char(token[i])) ++i;
    out.tag = to_lower_ascii(token.substr(b, i - b));
  }
  while (i < token.size()) {
    char c = token[i];
    if (c == '#' || c == '.') {
      size_t b = ++i;
      while (i < token.size() && is_ident_char(token[i])) ++i;
      if (i == b) {
        *ok = false;
        return out;
      }
      std::string name(token.substr(b, i - b));
      if (c == '#') {
        if (!out.id.empty()) {
          *ok = false;  // two ids in one compound
          return out;
        }
        out.id = name;
      } else {
        out.classes.push_back(name);
      }
    } else {
      *ok = false;  // pseudo-classes, attributes, anything else
      return out;
    }
  }
  return out;
}

}  // namespace

std::vector<SimpleSelectorChain> parse_selector_list(std::string_view text) {
  std::vector<SimpleSelectorChain> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = find_at_depth0(text, pos, ',');
    std::string_view part = (comma == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, comma - pos);
    std::string trimmed = trim_copy(part);
    if (!trimmed.empty()) {
      SimpleSelectorChain chain;
      chain.text = trimmed;
      chain.supported = true;
      for (char c : trimmed) {
        if (c == '>' || c == '+' || c == '~' || c == '[' || c == ':') {
          chain.supported = false;
          break;
        }
      }
      if (chain.supported) {
        for (const std::string& token : split_ws(trimmed)) {
          bool ok = false;
          CompoundSelector compound = parse_compound(token, &ok);
          if (!ok) {
            chain.supported = false;
            break;
          }
          chain.compounds.push_back(std::move(compound));
        }
        if (chain.compounds.empty()) chain.supported = false;
      }
      if (!chain.supported) chain.compounds.clear();
      out.push_back(std::move(chain));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

Specificity specificity(const SimpleSelectorChain& chain) {
  Specificity s;
  for (const CompoundSelector& c : chain.compounds) {
    if (!c.id.empty()) ++s.ids;
    s.classes += static_cast<int>(c.classes.size());
    if (!c.tag.empty()) ++s.tags;
  }
  return s;
}

std::vector<Declaration> parse_inline_declarations(std::string_view src,
                                                   size_t base_offset) {
  std::vector<Declaration> out;
  size_t pos = 0;
  while (pos < src.size()) {
    skip_ws_and_comments(src, pos);
    if (pos >= src.size()) break;
    size_t semi = find_at_depth0(src, pos, ';');
    size_t decl_end = (semi == std::string_view::npos) ? src.size() : semi;
    std::string_view decl = src.substr(pos, decl_end - pos);
    size_t colon = find_at_depth0(decl, 0, ':');
    if (colon != std::string_view::npos) {
      Declaration d;
      d.property = to_lower_ascii(trim_copy(decl.substr(0, colon)));
      size_t vb = colon + 1;
      size_t ve = decl.size();
      while (vb < ve && is_ascii_space(decl[vb])) ++vb;
      while (ve > vb && is_ascii_space(decl[ve - 1])) --ve;
      std::string value(decl.substr(vb, ve - vb));
      d.value_span = {base_offset + pos + vb, base_offset + pos + ve};
      std::string lower = to_lower_ascii(value);
      size_t bang = lower.rfind("!important");
      if (bang != std::string::npos &&
          trim_copy(lower.substr(bang + 10)).empty()) {
        d.important = true;
        value = trim_copy(value.substr(0, bang));
        d.value_span.end = d.value_span.start + value.size();
      }
      d.value = std::move(value);
      if (!d.property.empty()) out.push_back(std::move(d));
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return out;
}

Stylesheet parse_css(std::string_view src, Stylesheet::Origin origin,
                     size_t base_offset) {
  Stylesheet sheet;
  sheet.origin = origin;
  size_t pos = 0;
  while (pos < src.size()) {
    skip_ws_and_comments(src, pos);
    if (pos >= src.size()) break;
    size_t block_start = pos;

    if (src[pos] == '@') {
      // At-rules are preserved opaquely: @import-style rules end at the
      // semicolon, grouping rules swallow their whole brace section.
      size_t semi = find_at_depth0(src, pos, ';');
      size_t brace = find_at_depth0(src, pos, '{');
      DeclarationBlock block;
      block.at_rule = true;
      size_t end;
      if (brace != std::string_view::npos &&
          (semi == std::string_view::npos || brace < semi)) {
        int depth = 1;
        size_t scan = brace + 1;
        while (scan < src.size() && depth > 0) {
          char c = src[scan];
          if (c == '"' || c == '\'') {
            char q = c;
            ++scan;
            while (scan < src.size() && src[scan] != q) {
              if (src[scan] == '\\' && scan + 1 < src.size()) ++scan;
              ++scan;
            }
          } else if (c == '/' && scan + 1 < src.size() && src[scan + 1] == '*') {
            size_t close = src.find("*/", scan + 2);
            scan = (close == std::string_view::npos) ? src.size() : close + 1;
          } else if (c == '{') {
            ++depth;
          } else if (c == '}') {
            --depth;
          }
          ++scan;
        }
        end = scan;
        block.selector_text = trim_copy(src.substr(pos, brace - pos));
      } else if (semi != std::string_view::npos) {
        end = semi + 1;
        block.selector_text = trim_copy(src.substr(pos, semi - pos));
      } else {
        end = src.size();
        block.selector_text = trim_copy(src.substr(pos));
      }
      block.span = {base_offset + block_start, base_offset + end};
      sheet.blocks.push_back(std::move(block));
      pos = end;
      continue;
    }

    size_t brace = find_at_depth0(src, pos, '{');
    if (brace == std::string_view::npos) {
      // Trailing junk without a block; keep it opaque so nothing is lost.
      DeclarationBlock block;
      block.at_rule = true;
      block.selector_text = trim_copy(src.substr(pos));
      block.span = {base_offset + block_start, base_offset + src.size()};
      if (!block.selector_text.empty()) sheet.blocks.push_back(std::move(block));
      break;
    }
    size_t close = find_at_depth0(src, brace + 1, '}');
    size_t body_end = (close == std::string_view::npos) ? src.size() : close;
    size_t end = (close == std::string_view::npos) ? src.size() : close + 1;

    DeclarationBlock block;
    block.selector_text = trim_copy(src.substr(pos, brace - pos));
    block.parsed_selectors = parse_selector_list(block.selector_text);
    block.declarations = parse_inline_declarations(
        src.substr(brace + 1, body_end - brace - 1), base_offset + brace + 1);
    block.span = {base_offset + block_start, base_offset + end};
    sheet.blocks.push_back(std::move(block));
    pos = end;
  }
  return sheet;
}

}  // namespace a11y::css
