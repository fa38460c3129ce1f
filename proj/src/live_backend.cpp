#include "a11y/live_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include "a11y/core.hpp"
#include "httplib.h"

namespace a11y::gateway {

namespace {

bool retriable_status(int status) {
  return status == 429 || status >= 500;
}

}  // namespace

LiveBackend::LiveBackend(LiveConfig config) : config_(std::move(config)) {
  const auto& url = config_.endpoint;
  if (url.rfind("https://", 0) == 0)
    throw ConfigError("https endpoints need a TLS build; use an http proxy");
  if (url.rfind("http://", 0) != 0)
    throw ConfigError("endpoint must be an http:// URL: " + url);
  auto path_start = url.find('/', 7);
  if (path_start == std::string::npos) {
    host_base_ = url;
    path_ = "/";
  } else {
    host_base_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
  gate_ = std::make_unique<std::counting_semaphore<>>(
      config_.max_in_flight > 0 ? config_.max_in_flight : 1);
}

nlohmann::json LiveBackend::build_payload(const LiveConfig& config,
                                          const GenerationRequest& request) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages)
    messages.push_back({{"role", m.role}, {"content", m.content}});
  nlohmann::json payload = {{"model", config.model},
                            {"messages", std::move(messages)},
                            {"temperature", request.temperature}};
  if (request.max_output > 0) payload["max_tokens"] = request.max_output;
  return payload;
}

std::string LiveBackend::extract_text(const nlohmann::json& body) {
  if (!body.contains("choices") || body["choices"].empty())
    throw BackendError("response has no choices: " + body.dump());
  const auto& msg = body["choices"][0];
  if (msg.contains("message") && msg["message"].contains("content"))
    return msg["message"]["content"].get<std::string>();
  if (msg.contains("text")) return msg["text"].get<std::string>();
  throw BackendError("response choice has no content: " + msg.dump());
}

std::string LiveBackend::generate(const GenerationRequest& request) {
  if (request.messages.empty()) throw ConfigError("empty message list");
  auto payload = build_payload(config_, request).dump();

  httplib::Headers headers;
  if (const char* key = std::getenv("A11Y_API_KEY"); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  gate_->acquire();
  struct Release {
    std::counting_semaphore<>& g;
    ~Release() { g.release(); }
  } release{*gate_};

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    httplib::Client client(host_base_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);
    auto res = client.Post(path_, headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      auto body = nlohmann::json::parse(res->body, nullptr, false);
      if (body.is_discarded())
        throw BackendError("endpoint returned invalid JSON");
      return extract_text(body);
    }
    last_error = "http " + std::to_string(res->status) + ": " + res->body;
    if (!retriable_status(res->status)) throw BackendError(last_error);
  }
  throw BackendError("retries exhausted; last error: " + last_error,
                     /*retriable=*/true);
}

}  // namespace a11y::gateway
