#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "a11y/text_util.hpp"

using namespace a11y;

TEST_CASE("collapse_ws folds runs and trims") {
  CHECK(collapse_ws("  a \t\n b  ") == "a b");
  CHECK(collapse_ws("") == "");
  CHECK(collapse_ws("   ") == "");
  CHECK(collapse_ws("one") == "one");
}

TEST_CASE("decode_entities") {
  CHECK(decode_entities("a &amp; b") == "a & b");
  CHECK(decode_entities("&lt;div&gt;") == "<div>");
  CHECK(decode_entities("&#65;&#x42;") == "AB");
  CHECK(decode_entities("&unknown;") == "&unknown;");
  CHECK(decode_entities("50&#37; off") == "50% off");
  CHECK(decode_entities("&") == "&");
}

TEST_CASE("utf8 validation") {
  CHECK(validate_utf8("plain ascii"));
  CHECK(validate_utf8("caf\xc3\xa9"));
  CHECK(validate_utf8("\xe2\x82\xac"));  // euro sign
  size_t bad = 0;
  CHECK_FALSE(validate_utf8("\xff\xfe", &bad));
  CHECK(bad == 0);
  CHECK_FALSE(validate_utf8("ok\xc3", &bad));  // truncated sequence
  CHECK(bad == 2);
  CHECK_FALSE(validate_utf8("\xc0\xaf"));  // overlong
  CHECK_FALSE(validate_utf8("\xed\xa0\x80"));  // surrogate
}

TEST_CASE("iequals and contains_ci") {
  CHECK(iequals("DIV", "div"));
  CHECK_FALSE(iequals("div", "divs"));
  CHECK(contains_ci("Hello World", "world"));
  CHECK_FALSE(contains_ci("abc", "abd"));
}

TEST_CASE("fnv1a64 reference values") {
  // Standard FNV-1a test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
}

TEST_CASE("split_ws") {
  auto parts = split_ws("  one two\tthree ");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "one");
  CHECK(parts[2] == "three");
  CHECK(split_ws("").empty());
}
