#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace a11y {

char ascii_lower(char c);
std::string to_lower_ascii(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool is_ascii_space(char c);

std::string trim_copy(std::string_view s);

// Collapses every run of ASCII whitespace to a single space and trims ends.
std::string collapse_ws(std::string_view s);

// Decodes named (core set), decimal and hex character references. Unknown
// references pass through untouched.
std::string decode_entities(std::string_view s);

// True when the buffer is valid UTF-8. `bad_offset` receives the first
// offending byte offset on failure.
bool validate_utf8(std::string_view s, size_t* bad_offset = nullptr);

std::vector<std::string> split_ws(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
bool contains_ci(std::string_view haystack, std::string_view needle);

// FNV-1a 64-bit. Used for content identity tracking, not security.
uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

std::string json_escape(std::string_view s);

}  // namespace a11y
