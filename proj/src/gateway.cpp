#include "a11y/gateway.hpp"

#include <fstream>

#include "a11y/core.hpp"
#include "a11y/text_util.hpp"

namespace a11y::gateway {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

}  // namespace

uint64_t fingerprint(const std::vector<Message>& messages) {
  uint64_t h = kFnvOffset;
  for (const auto& m : messages) {
    fnv_mix(h, m.role);
    fnv_mix(h, "\x1f");
    fnv_mix(h, collapse_ws(m.content));
    fnv_mix(h, "\x1e");
  }
  return h;
}

std::string fingerprint_hex(const std::vector<Message>& messages) {
  uint64_t h = fingerprint(messages);
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json request_to_json(const GenerationRequest& request) {
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : request.messages)
    msgs.push_back({{"role", m.role}, {"content", m.content}});
  return {{"messages", std::move(msgs)},
          {"temperature", request.temperature},
          {"max_output", request.max_output}};
}

GenerationRequest request_from_json(const nlohmann::json& j) {
  GenerationRequest r;
  for (const auto& m : j.at("messages"))
    r.messages.push_back({m.at("role").get<std::string>(),
                          m.at("content").get<std::string>()});
  r.temperature = j.value("temperature", 1.0);
  r.max_output = j.value("max_output", 0L);
  return r;
}

std::vector<TranscriptEntry> load_transcript(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read transcript " + path.string());
  std::vector<TranscriptEntry> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim_copy(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ConfigError("transcript " + path.string() + " line " +
                        std::to_string(lineno) + " is not valid JSON");
    TranscriptEntry e;
    e.fingerprint = j.at("fingerprint").get<std::string>();
    e.request = j.value("request", nlohmann::json::object());
    e.response = j.at("response").get<std::string>();
    entries.push_back(std::move(e));
  }
  return entries;
}

void append_transcript(const std::filesystem::path& path,
                       const TranscriptEntry& entry) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("cannot write transcript " + path.string());
  nlohmann::json j = {{"fingerprint", entry.fingerprint},
                      {"request", entry.request},
                      {"response", entry.response}};
  out << j.dump() << "\n";
}

ReplayBackend::ReplayBackend(std::vector<TranscriptEntry> entries) {
  for (auto& e : entries) {
    auto it = responses_.find(e.fingerprint);
    if (it != responses_.end()) {
      if (it->second != e.response)
        throw ConfigError("transcript has conflicting responses for fingerprint " +
                          e.fingerprint);
      continue;
    }
    responses_.emplace(e.fingerprint, std::move(e.response));
  }
}

ReplayBackend ReplayBackend::from_file(const std::filesystem::path& path) {
  return ReplayBackend(load_transcript(path));
}

std::string ReplayBackend::generate(const GenerationRequest& request) {
  auto key = fingerprint_hex(request.messages);
  auto it = responses_.find(key);
  if (it == responses_.end()) throw UnrecordedPromptError(key);
  return it->second;
}

RecordingBackend::RecordingBackend(TextBackend& inner,
                                   std::filesystem::path transcript_path)
    : inner_(inner), path_(std::move(transcript_path)) {}

std::string RecordingBackend::generate(const GenerationRequest& request) {
  auto response = inner_.generate(request);
  TranscriptEntry e;
  e.fingerprint = fingerprint_hex(request.messages);
  e.request = request_to_json(request);
  e.response = response;
  append_transcript(path_, e);
  return response;
}

}  // namespace a11y::gateway
