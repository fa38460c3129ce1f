#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "a11y/config.hpp"
#include "a11y/segmenter.hpp"
#include "json.hpp"

namespace a11y::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Content hash used throughout provenance records (16 hex chars).
std::string content_hash(std::string_view bytes);
std::string file_content_hash(const std::string& path);

struct HashedFile {
  std::string path;
  std::string hash;
};

// Provenance record written next to command outputs. Timestamps make runs
// traceable; reproducibility claims are about output hashes, not this file.
struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;  // rendered argv
  Config config_snapshot;
  std::vector<HashedFile> inputs;
  std::vector<HashedFile> outputs;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;

  void add_input(const std::string& path);
  void add_output(const std::string& path);
  void stamp_start();
  void stamp_finish();
};

nlohmann::json manifest_to_json(const RunManifest& manifest);
void write_manifest(const std::string& path, const RunManifest& manifest);

// Result of walking a tree for UI files, with an optional seeded sample.
struct CorpusIndex {
  std::string root;
  struct Entry {
    std::string path;  // relative to root
    seg::UiFileVerdict verdict;
  };
  std::vector<Entry> files;          // every regular file visited
  bool sampled = false;
  uint64_t seed = 0;
  std::vector<std::string> sample;   // relative paths, subset of UI files

  std::vector<std::string> ui_files() const;
};

nlohmann::json index_to_json(const CorpusIndex& index);
CorpusIndex index_from_json(const nlohmann::json& j);

}  // namespace a11y::cli
