#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace veritas {

// Root of every error the library throws. Callers that only need to
// distinguish "our" failures from std:: ones catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violated a documented precondition or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input. `offset` is a byte offset for whole-file
// JSON or a 1-based line number for line-delimited files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Network-level failure talking to a provider; safe to retry.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Provider answered, but with a non-2xx status.
class ProviderError : public Error {
 public:
  ProviderError(int status, std::string body_excerpt)
      : Error("provider returned HTTP " + std::to_string(status) + ": " +
              body_excerpt),
        status_(status),
        body_excerpt_(std::move(body_excerpt)) {}
  int status() const noexcept { return status_; }
  const std::string& body_excerpt() const noexcept { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

// Provider response did not match the expected wire format.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class EmptyOutputError : public Error {
 public:
  using Error::Error;
};

// Scripted provider received a request it has no response for.
class UnknownPromptError : public Error {
 public:
  using Error::Error;
};

class UnparseableVerdictError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed for one claim.
class StageError : public Error {
 public:
  StageError(std::int64_t claim_id, std::string stage, const std::string& what)
      : Error(what), claim_id_(claim_id), stage_(std::move(stage)) {}
  std::int64_t claim_id() const noexcept { return claim_id_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::int64_t claim_id_;
  std::string stage_;
};

}  // namespace veritas
