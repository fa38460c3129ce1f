#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a11y/core.hpp"

namespace a11y::seg {

// A contiguous byte slice of a source file. Blocks jointly tile the file;
// `content` starts as the original bytes and may be replaced before
// reassembly.
struct CodeBlock {
  std::string id;  // "<path>#<ordinal>"
  int ordinal = 0;
  std::string kind;  // html-structural | html-preamble | css-declaration-block
                     // | js-function | js-class | opaque
  SourceSpan span;
  std::string content;
};

struct UiFileVerdict {
  bool is_ui = false;
  std::vector<std::string> reasons;  // nonempty iff is_ui
  std::optional<std::string> error;  // e.g. "undecodable" for binary files
};

struct DetectorConfig {
  std::vector<std::string> markers = {"document.getElementById", "innerHTML",
                                      "background:", "font:"};
};

// Decides whether a file takes part in UI rendering: UI extension, UI code
// markers, or the presence of HTML tags.
UiFileVerdict detect_ui_file(const std::string& path, std::string_view content,
                             const DetectorConfig& config = {});

// Splits a file into blocks by kind-specific boundaries. HTML splits at
// top-level section/header/nav/main/div elements, CSS at declaration blocks,
// JS at top-level function/class declarations. Anything else is one opaque
// block. Empty input yields no blocks.
std::vector<CodeBlock> segment(const std::string& path,
                               std::string_view content);

// Joins a complete block list back into file bytes. The list must be the
// original one for a single file: same ids, original order, nothing missing
// or duplicated; otherwise StructureError.
std::string reassemble(const std::vector<CodeBlock>& blocks);

// Cochran sample size with finite population correction, ceil-rounded and
// clamped to the population.
size_t sample_size(size_t population, double confidence = 0.90,
                   double margin = 0.10);

// Deterministic sample of `n` indexes out of `population`, identical across
// platforms for a given seed. Result is sorted ascending.
std::vector<size_t> seeded_sample(size_t population, size_t n, uint64_t seed);

}  // namespace a11y::seg
