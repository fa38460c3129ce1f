#include "a11y/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "a11y/core.hpp"
#include "a11y/text_util.hpp"

namespace a11y::cli {

namespace {

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace

std::string content_hash(std::string_view bytes) { return fnv1a64_hex(bytes); }

std::string file_content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file for hashing: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return content_hash(buf.str());
}

void RunManifest::add_input(const std::string& path) {
  inputs.push_back({path, file_content_hash(path)});
}

void RunManifest::add_output(const std::string& path) {
  outputs.push_back({path, file_content_hash(path)});
}

void RunManifest::stamp_start() { started_at = now_iso8601(); }
void RunManifest::stamp_finish() { finished_at = now_iso8601(); }

nlohmann::json manifest_to_json(const RunManifest& manifest) {
  auto files = [](const std::vector<HashedFile>& list) {
    auto arr = nlohmann::json::array();
    for (const auto& f : list) arr.push_back({{"path", f.path}, {"hash", f.hash}});
    return arr;
  };
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [key, value] : manifest.config_snapshot.values) config[key] = value;
  return {{"tool_version", manifest.tool_version},
          {"command", manifest.command},
          {"config", std::move(config)},
          {"inputs", files(manifest.inputs)},
          {"outputs", files(manifest.outputs)},
          {"started_at", manifest.started_at},
          {"finished_at", manifest.finished_at}};
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write manifest: " + path);
  out << manifest_to_json(manifest).dump(2) << "\n";
}

std::vector<std::string> CorpusIndex::ui_files() const {
  std::vector<std::string> out;
  for (const auto& entry : files)
    if (entry.verdict.is_ui) out.push_back(entry.path);
  return out;
}

nlohmann::json index_to_json(const CorpusIndex& index) {
  auto files = nlohmann::json::array();
  for (const auto& entry : index.files) {
    nlohmann::json verdict{{"is_ui", entry.verdict.is_ui},
                           {"reasons", entry.verdict.reasons}};
    if (entry.verdict.error) verdict["error"] = *entry.verdict.error;
    files.push_back({{"path", entry.path}, {"verdict", std::move(verdict)}});
  }
  nlohmann::json j{{"root", index.root},
                   {"files", std::move(files)},
                   {"sampled", index.sampled},
                   {"sample", index.sample}};
  if (index.sampled) j["seed"] = index.seed;
  return j;
}

CorpusIndex index_from_json(const nlohmann::json& j) {
  CorpusIndex index;
  index.root = j.at("root").get<std::string>();
  for (const auto& jf : j.at("files")) {
    CorpusIndex::Entry entry;
    entry.path = jf.at("path").get<std::string>();
    const auto& jv = jf.at("verdict");
    entry.verdict.is_ui = jv.at("is_ui").get<bool>();
    entry.verdict.reasons = jv.at("reasons").get<std::vector<std::string>>();
    if (jv.contains("error")) entry.verdict.error = jv["error"].get<std::string>();
    index.files.push_back(std::move(entry));
  }
  index.sampled = j.value("sampled", false);
  if (j.contains("seed")) index.seed = j["seed"].get<uint64_t>();
  index.sample = j.value("sample", std::vector<std::string>{});
  return index;
}

}  // namespace a11y::cli
