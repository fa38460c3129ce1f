#pragma once

#include <memory>
#include <semaphore>
#include <string>

#include "a11y/gateway.hpp"
#include "json.hpp"

namespace a11y::gateway {

// Endpoint settings only. The API key is read from the A11Y_API_KEY
// environment variable at request time and has no config slot on purpose.
struct LiveConfig {
  std::string endpoint;  // full URL of a chat-completion route
  std::string model = "gpt-4";
  int max_retries = 3;
  int max_in_flight = 4;
  int timeout_seconds = 120;
};

class LiveBackend : public TextBackend {
 public:
  explicit LiveBackend(LiveConfig config);

  std::string generate(const GenerationRequest& request) override;
  std::string id() const override { return "live"; }

  // Wire format helpers, exposed so tests can pin the payload shape without
  // a server.
  static nlohmann::json build_payload(const LiveConfig& config,
                                      const GenerationRequest& request);
  static std::string extract_text(const nlohmann::json& response_body);

 private:
  LiveConfig config_;
  std::string host_base_;  // scheme://host[:port]
  std::string path_;
  std::unique_ptr<std::counting_semaphore<>> gate_;  // bounds in-flight requests
};

}  // namespace a11y::gateway
