#include "a11y/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>

#include "a11y/text_util.hpp"

namespace a11y::style {
namespace {

const std::map<std::string, uint32_t>& named_colors() {
  static const std::map<std::string, uint32_t> table = {
      {"aliceblue", 0xf0f8ff},
      {"antiquewhite", 0xfaebd7},
      {"aqua", 0x00ffff},
      {"aquamarine", 0x7fffd4},
      {"azure", 0xf0ffff},
      {"beige", 0xf5f5dc},
      {"bisque", 0xffe4c4},
      {"black", 0x000000},
      {"blanchedalmond", 0xffebcd},
      {"blue", 0x0000ff},
      {"blueviolet", 0x8a2be2},
      {"brown", 0xa52a2a},
      {"burlywood", 0xdeb887},
      {"cadetblue", 0x5f9ea0},
      {"chartreuse", 0x7fff00},
      {"chocolate", 0xd2691e},
      {"coral", 0xff7f50},
      {"cornflowerblue", 0x6495ed},
      {"cornsilk", 0xfff8dc},
      {"crimson", 0xdc143c},
      {"cyan", 0x00ffff},
      {"darkblue", 0x00008b},
      {"darkcyan", 0x008b8b},
      {"darkgoldenrod", 0xb8860b},
      {"darkgray", 0xa9a9a9},
      {"darkgreen", 0x006400},
      {"darkgrey", 0xa9a9a9},
      {"darkkhaki", 0xbdb76b},
      {"darkmagenta", 0x8b008b},
      {"darkolivegreen", 0x556b2f},
      {"darkorange", 0xff8c00},
      {"darkorchid", 0x9932cc},
      {"darkred", 0x8b0000},
      {"darksalmon", 0xe9967a},
      {"darkseagreen", 0x8fbc8f},
      {"darkslateblue", 0x483d8b},
      {"darkslategray", 0x2f4f4f},
      {"darkslategrey", 0x2f4f4f},
      {"darkturquoise", 0x00ced1},
      {"darkviolet", 0x9400d3},
      {"deeppink", 0xff1493},
      {"deepskyblue", 0x00bfff},
      {"dimgray", 0x696969},
      {"dimgrey", 0x696969},
      {"dodgerblue", 0x1e90ff},
      {"firebrick", 0xb22222},
      {"floralwhite", 0xfffaf0},
      {"forestgreen", 0x228b22},
      {"fuchsia", 0xff00ff},
      {"gainsboro", 0xdcdcdc},
      {"ghostwhite", 0xf8f8ff},
      {"gold", 0xffd700},
      {"goldenrod", 0xdaa520},
      {"gray", 0x808080},
      {"green", 0x008000},
      {"greenyellow", 0xadff2f},
      {"grey", 0x808080},
      {"honeydew", 0xf0fff0},
      {"hotpink", 0xff69b4},
      {"indianred", 0xcd5c5c},
      {"indigo", 0x4b0082},
      {"ivory", 0xfffff0},
      {"khaki", 0xf0e68c},
      {"lavender", 0xe6e6fa},
      {"lavenderblush", 0xfff0f5},
      {"lawngreen", 0x7cfc00},
      {"lemonchiffon", 0xfffacd},
      {"lightblue", 0xadd8e6},
      {"lightcoral", 0xf08080},
      {"lightcyan", 0xe0ffff},
      {"lightgoldenrodyellow", 0xfafad2},
      {"lightgray", 0xd3d3d3},
      {"lightgreen", 0x90ee90},
      {"lightgrey", 0xd3d3d3},
      {"lightpink", 0xffb6c1},
      {"lightsalmon", 0xffa07a},
      {"lightseagreen", 0x20b2aa},
      {"lightskyblue", 0x87cefa},
      {"lightslategray", 0x778899},
      {"lightslategrey", 0x778899},
      {"lightsteelblue", 0xb0c4de},
      {"lightyellow", 0xffffe0},
      {"lime", 0x00ff00},
      {"limegreen", 0x32cd32},
      {"linen", 0xfaf0e6},
      {"magenta", 0xff00ff},
      {"maroon", 0x800000},
      {"mediumaquamarine", 0x66cdaa},
      {"mediumblue", 0x0000cd},
      {"mediumorchid", 0xba55d3},
      {"mediumpurple", 0x9370db},
      {"mediumseagreen", 0x3cb371},
      {"mediumslateblue", 0x7b68ee},
      {"mediumspringgreen", 0x00fa9a},
      {"mediumturquoise", 0x48d1cc},
      {"mediumvioletred", 0xc71585},
      {"midnightblue", 0x191970},
      {"mintcream", 0xf5fffa},
      {"mistyrose", 0xffe4e1},
      {"moccasin", 0xffe4b5},
      {"navajowhite", 0xffdead},
      {"navy", 0x000080},
      {"oldlace", 0xfdf5e6},
      {"olive", 0x808000},
      {"olivedrab", 0x6b8e23},
      {"orange", 0xffa500},
      {"orangered", 0xff4500},
      {"orchid", 0xda70d6},
      {"palegoldenrod", 0xeee8aa},
      {"palegreen", 0x98fb98},
      {"paleturquoise", 0xafeeee},
      {"palevioletred", 0xdb7093},
      {"papayawhip", 0xffefd5},
      {"peachpuff", 0xffdab9},
      {"peru", 0xcd853f},
      {"pink", 0xffc0cb},
      {"plum", 0xdda0dd},
      {"powderblue", 0xb0e0e6},
      {"purple", 0x800080},
      {"rebeccapurple", 0x663399},
      {"red", 0xff0000},
      {"rosybrown", 0xbc8f8f},
      {"royalblue", 0x4169e1},
      {"saddlebrown", 0x8b4513},
      {"salmon", 0xfa8072},
      {"sandybrown", 0xf4a460},
      {"seagreen", 0x2e8b57},
      {"seashell", 0xfff5ee},
      {"sienna", 0xa0522d},
      {"silver", 0xc0c0c0},
      {"skyblue", 0x87ceeb},
      {"slateblue", 0x6a5acd},
      {"slategray", 0x708090},
      {"slategrey", 0x708090},
      {"snow", 0xfffafa},
      {"springgreen", 0x00ff7f},
      {"steelblue", 0x4682b4},
      {"tan", 0xd2b48c},
      {"teal", 0x008080},
      {"thistle", 0xd8bfd8},
      {"tomato", 0xff6347},
      {"turquoise", 0x40e0d0},
      {"violet", 0xee82ee},
      {"wheat", 0xf5deb3},
      {"white", 0xffffff},
      {"whitesmoke", 0xf5f5f5},
      {"yellow", 0xffff00},
      {"yellowgreen", 0x9acd32},
  };
  return table;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<Rgba> parse_hex(std::string_view body) {
  for (char c : body) {
    if (hex_digit(c) < 0) return std::nullopt;
  }
  auto pair = [&](size_t i) {
    return static_cast<uint8_t>(hex_digit(body[i]) * 16 + hex_digit(body[i + 1]));
  };
  auto single = [&](size_t i) {
    int v = hex_digit(body[i]);
    return static_cast<uint8_t>(v * 16 + v);
  };
  switch (body.size()) {
    case 3:
      return Rgba{single(0), single(1), single(2), 1.0};
    case 4:
      return Rgba{single(0), single(1), single(2), single(3) / 255.0};
    case 6:
      return Rgba{pair(0), pair(2), pair(4), 1.0};
    case 8:
      return Rgba{pair(0), pair(2), pair(4), pair(6) / 255.0};
    default:
      return std::nullopt;
  }
}

// One rgb()/rgba() component: integer, float or percentage.
std::optional<double> parse_component(std::string_view token, bool* percent) {
  std::string t = trim_copy(token);
  if (t.empty()) return std::nullopt;
  *percent = false;
  if (t.back() == '%') {
    *percent = true;
    t.pop_back();
    t = trim_copy(t);
    if (t.empty()) return std::nullopt;
  }
  size_t pos = 0;
  double value = 0;
  try {
    value = std::stod(t, &pos);
  } catch (...) {
    return std::nullopt;
  }
  if (pos != t.size()) return std::nullopt;
  return value;
}

uint8_t clamp_channel(double v) {
  return static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

std::optional<Rgba> parse_rgb_function(std::string_view inner) {
  // Commas or spaces; optional "/ alpha" in the space form.
  std::string body(inner);
  std::string alpha_part;
  if (size_t slash = body.find('/'); slash != std::string::npos) {
    alpha_part = trim_copy(body.substr(slash + 1));
    body = body.substr(0, slash);
  }
  std::vector<std::string> parts;
  if (body.find(',') != std::string::npos) {
    size_t start = 0;
    while (start <= body.size()) {
      size_t comma = body.find(',', start);
      if (comma == std::string::npos) {
        parts.push_back(trim_copy(body.substr(start)));
        break;
      }
      parts.push_back(trim_copy(body.substr(start, comma - start)));
      start = comma + 1;
    }
  } else {
    parts = split_ws(body);
  }
  if (!alpha_part.empty()) {
    if (parts.size() != 3) return std::nullopt;
    parts.push_back(alpha_part);
  }
  if (parts.size() != 3 && parts.size() != 4) return std::nullopt;

  double ch[3];
  for (int i = 0; i < 3; ++i) {
    bool percent = false;
    auto v = parse_component(parts[i], &percent);
    if (!v) return std::nullopt;
    ch[i] = percent ? *v * 255.0 / 100.0 : *v;
  }
  double alpha = 1.0;
  if (parts.size() == 4) {
    bool percent = false;
    auto v = parse_component(parts[3], &percent);
    if (!v) return std::nullopt;
    alpha = percent ? *v / 100.0 : *v;
    alpha = std::clamp(alpha, 0.0, 1.0);
  }
  return Rgba{clamp_channel(ch[0]), clamp_channel(ch[1]), clamp_channel(ch[2]), alpha};
}

double linearize(uint8_t channel) {
  double c = channel / 255.0;
  if (c <= 0.03928) return c / 12.92;
  return std::pow((c + 0.055) / 1.055, 2.4);
}

}  // namespace

std::optional<Rgba> parse_color(std::string_view text) {
  std::string t = trim_copy(text);
  if (t.empty()) return std::nullopt;
  if (t[0] == '#') return parse_hex(std::string_view(t).substr(1));

  std::string lower = to_lower_ascii(t);
  if (lower == "transparent") return Rgba{0, 0, 0, 0.0};

  if (lower.rfind("rgb(", 0) == 0 || lower.rfind("rgba(", 0) == 0) {
    if (lower.back() != ')') return std::nullopt;
    size_t open = lower.find('(');
    return parse_rgb_function(std::string_view(t).substr(open + 1, t.size() - open - 2));
  }

  auto it = named_colors().find(lower);
  if (it == named_colors().end()) return std::nullopt;
  uint32_t v = it->second;
  return Rgba{static_cast<uint8_t>((v >> 16) & 0xff), static_cast<uint8_t>((v >> 8) & 0xff),
              static_cast<uint8_t>(v & 0xff), 1.0};
}

double relative_luminance(const Rgba& color) {
  return 0.2126 * linearize(color.r) + 0.7152 * linearize(color.g) + 0.0722 * linearize(color.b);
}

double contrast_ratio(const Rgba& a, const Rgba& b) {
  double la = relative_luminance(a);
  double lb = relative_luminance(b);
  double lighter = std::max(la, lb);
  double darker = std::min(la, lb);
  double ratio = (lighter + 0.05) / (darker + 0.05);
  return std::clamp(ratio, 1.0, 21.0);
}

Rgba composite_over(const Rgba& top, const Rgba& bottom) {
  double a = std::clamp(top.a, 0.0, 1.0);
  auto mix = [&](uint8_t t, uint8_t b) {
    return clamp_channel(a * t + (1.0 - a) * b);
  };
  return Rgba{mix(top.r, bottom.r), mix(top.g, bottom.g), mix(top.b, bottom.b), 1.0};
}

std::string to_hex(const Rgba& color) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", color.r, color.g, color.b);
  return buf;
}

Hsl rgb_to_hsl(const Rgba& color) {
  double r = color.r / 255.0;
  double g = color.g / 255.0;
  double b = color.b / 255.0;
  double max = std::max({r, g, b});
  double min = std::min({r, g, b});
  Hsl out;
  out.l = (max + min) / 2.0;
  if (max == min) return out;  // achromatic, h = s = 0
  double d = max - min;
  out.s = out.l > 0.5 ? d / (2.0 - max - min) : d / (max + min);
  double h;
  if (max == r) {
    h = (g - b) / d + (g < b ? 6.0 : 0.0);
  } else if (max == g) {
    h = (b - r) / d + 2.0;
  } else {
    h = (r - g) / d + 4.0;
  }
  out.h = h * 60.0;
  return out;
}

Rgba hsl_to_rgb(const Hsl& hsl) {
  double h = std::fmod(hsl.h, 360.0);
  if (h < 0) h += 360.0;
  double s = std::clamp(hsl.s, 0.0, 1.0);
  double l = std::clamp(hsl.l, 0.0, 1.0);
  auto hue_to_channel = [&](double p, double q, double t) {
    if (t < 0) t += 1.0;
    if (t > 1) t -= 1.0;
    if (t < 1.0 / 6) return p + (q - p) * 6.0 * t;
    if (t < 1.0 / 2) return q;
    if (t < 2.0 / 3) return p + (q - p) * (2.0 / 3 - t) * 6.0;
    return p;
  };
  if (s == 0) {
    uint8_t v = clamp_channel(l * 255.0);
    return Rgba{v, v, v, 1.0};
  }
  double q = l < 0.5 ? l * (1.0 + s) : l + s - l * s;
  double p = 2.0 * l - q;
  double hk = h / 360.0;
  return Rgba{clamp_channel(hue_to_channel(p, q, hk + 1.0 / 3) * 255.0),
              clamp_channel(hue_to_channel(p, q, hk) * 255.0),
              clamp_channel(hue_to_channel(p, q, hk - 1.0 / 3) * 255.0), 1.0};
}

}  // namespace a11y::style
