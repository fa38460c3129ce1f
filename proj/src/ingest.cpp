#include "a11y/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "a11y/core.hpp"
#include "a11y/segmenter.hpp"

namespace a11y::cli {

namespace fs = std::filesystem;

CorpusIndex ingest_tree(const std::string& root, const IngestOptions& options) {
  fs::path base(root);
  if (!fs::is_directory(base)) throw ConfigError("not a directory: " + root);

  CorpusIndex index;
  index.root = root;

  std::vector<std::string> paths;
  fs::recursive_directory_iterator it(base), end;
  for (; it != end; ++it) {
    const auto& entry = *it;
    auto name = entry.path().filename().string();
    if (entry.is_directory()) {
      if (!name.empty() && name[0] == '.') it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file() || (!name.empty() && name[0] == '.')) continue;
    paths.push_back(fs::relative(entry.path(), base).generic_string());
  }
  std::sort(paths.begin(), paths.end());

  for (const auto& rel : paths) {
    CorpusIndex::Entry entry;
    entry.path = rel;
    auto full = base / rel;
    std::error_code ec;
    auto size = fs::file_size(full, ec);
    if (ec || size > options.max_file_bytes) {
      entry.verdict.is_ui = false;
      entry.verdict.error = "skipped: unreadable or too large";
    } else {
      std::ifstream in(full, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      entry.verdict = seg::detect_ui_file(rel, buf.str());
    }
    index.files.push_back(std::move(entry));
  }

  if (options.sample) {
    index.sampled = true;
    index.seed = options.seed;
    auto ui = index.ui_files();
    auto n = seg::sample_size(ui.size());
    for (size_t pick : seg::seeded_sample(ui.size(), n, options.seed))
      index.sample.push_back(ui[pick]);
  }
  return index;
}

}  // namespace a11y::cli
