#pragma once

#include <cstdint>
#include <string>

#include "a11y/manifest.hpp"

namespace a11y::cli {

struct IngestOptions {
  bool sample = false;
  uint64_t seed = 0;
  size_t max_file_bytes = 4 * 1024 * 1024;  // larger files are skipped
};

// Walks `root` recursively (skipping dot-directories), classifies every
// regular file with the UI detector, and optionally draws the Cochran-sized
// seeded sample from the UI files. File order is lexicographic so the same
// tree and seed always give the same sample.
CorpusIndex ingest_tree(const std::string& root, const IngestOptions& options = {});

}  // namespace a11y::cli
