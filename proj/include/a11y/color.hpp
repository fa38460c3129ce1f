#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace a11y::style {

struct Rgba {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;
  double a = 1.0;

  bool operator==(const Rgba& other) const = default;
};

// Accepts #rgb, #rrggbb, #rgba, #rrggbbaa, rgb()/rgba() and CSS named colors.
// Anything else (var(), hsl(), gradients, ...) yields nullopt.
std::optional<Rgba> parse_color(std::string_view text);

// WCAG relative luminance of an opaque color, in [0, 1].
double relative_luminance(const Rgba& color);

// (L_lighter + 0.05) / (L_darker + 0.05), clamped to [1, 21]. Alpha is
// ignored; composite first.
double contrast_ratio(const Rgba& a, const Rgba& b);

// Source-over compositing of `top` onto `bottom` (bottom treated as opaque).
Rgba composite_over(const Rgba& top, const Rgba& bottom);

std::string to_hex(const Rgba& color);  // "#rrggbb"

struct Hsl {
  double h = 0;  // degrees [0, 360)
  double s = 0;  // [0, 1]
  double l = 0;  // [0, 1]
};

Hsl rgb_to_hsl(const Rgba& color);
Rgba hsl_to_rgb(const Hsl& hsl);

}  // namespace a11y::style
