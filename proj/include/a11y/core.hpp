#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace a11y {

// Half-open byte range [start, end) into an immutable source buffer.
struct SourceSpan {
  size_t start = 0;
  size_t end = 0;

  size_t length() const { return end - start; }
  bool empty() const { return start == end; }
  bool contains(size_t offset) const { return offset >= start && offset < end; }
  bool contains(const SourceSpan& other) const {
    return other.start >= start && other.end <= end;
  }
  bool operator==(const SourceSpan& other) const = default;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when input bytes cannot be decoded under the expected encoding.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Invalid configuration or invalid argument combination supplied by a caller.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Block lists that cannot be reassembled (missing/duplicate/permuted ids).
class StructureError : public Error {
 public:
  explicit StructureError(const std::string& what) : Error(what) {}
};

// Text-generation backend failures (transport, protocol, exhausted retries).
class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what, bool retriable = false)
      : Error(what), retriable_(retriable) {}
  bool retriable() const { return retriable_; }

 private:
  bool retriable_;
};

// Replay backend was asked for a prompt that is not in its transcript.
class UnrecordedPromptError : public BackendError {
 public:
  explicit UnrecordedPromptError(const std::string& fingerprint)
      : BackendError("unrecorded prompt: no transcript entry for fingerprint " +
                     fingerprint),
        fingerprint_(fingerprint) {}
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::string fingerprint_;
};

}  // namespace a11y
