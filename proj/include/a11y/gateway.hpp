#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace a11y::gateway {

struct Message {
  std::string role;  // system | user | assistant
  std::string content;

  bool operator==(const Message&) const = default;
};

struct GenerationRequest {
  std::vector<Message> messages;
  double temperature = 1.0;
  long max_output = 0;  // 0 = backend default
};

// Stable identity of a request: whitespace runs inside message content are
// insignificant, roles and message order are not.
uint64_t fingerprint(const std::vector<Message>& messages);
std::string fingerprint_hex(const std::vector<Message>& messages);

class TextBackend {
 public:
  virtual ~TextBackend() = default;
  virtual std::string generate(const GenerationRequest& request) = 0;
  virtual std::string id() const = 0;
};

// One recorded exchange. `request` keeps the full message list for
// inspection; lookup goes by fingerprint only.
struct TranscriptEntry {
  std::string fingerprint;
  nlohmann::json request;
  std::string response;
};

nlohmann::json request_to_json(const GenerationRequest& request);
GenerationRequest request_from_json(const nlohmann::json& j);

// JSONL, one {fingerprint, request, response} object per line.
std::vector<TranscriptEntry> load_transcript(const std::filesystem::path& path);
void append_transcript(const std::filesystem::path& path, const TranscriptEntry& entry);

// Serves recorded responses; any unrecorded prompt is a hard error so test
// runs can never silently hit the network.
class ReplayBackend : public TextBackend {
 public:
  explicit ReplayBackend(std::vector<TranscriptEntry> entries);
  static ReplayBackend from_file(const std::filesystem::path& path);

  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return "replay"; }

 private:
  std::map<std::string, std::string> responses_;
};

// Delegates to another backend and appends every exchange to a transcript
// file, producing the input for later replay runs.
class RecordingBackend : public TextBackend {
 public:
  RecordingBackend(TextBackend& inner, std::filesystem::path transcript_path);

  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return inner_.id() + "+record"; }

 private:
  TextBackend& inner_;
  std::filesystem::path path_;
};

}  // namespace a11y::gateway
