#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coexplore {

enum class ErrorKind {
  EmptyTopic,
  InvalidArgument,
  FixtureMissing,
  ProviderError,
  UnparseableCompletion,
  RateLimited,
  NetworkError,
  MalformedResponse,
  NotFound,
  DimensionMismatch,
  ZeroVector,
  MissingEmbedding,
  NoCoveredWords,
  UnknownEntity,
  CorruptState,
  PreconditionFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Seconds the caller should wait before retrying (RateLimited / ProviderError).
  std::optional<double> retry_after() const noexcept { return retry_after_; }
  Error& with_retry_after(double seconds) {
    retry_after_ = seconds;
    return *this;
  }

  int attempts() const noexcept { return attempts_; }
  Error& with_attempts(int n) {
    attempts_ = n;
    return *this;
  }

 private:
  ErrorKind kind_;
  std::optional<double> retry_after_;
  int attempts_ = 0;
};

}  // namespace coexplore
