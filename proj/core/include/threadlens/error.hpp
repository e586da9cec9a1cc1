#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace threadlens {

enum class ErrorCode {
  MalformedJson,
  MissingField,
  BadPrefix,
  BadWindow,
  TooFewEvents,
  DegenerateSeries,
  NoFirstLevelComments,
  BelowThreshold,
  BadBinSpec,
  BadValue,
  Undefined,
  NoPosts,
  NoComments,
  ZeroPosts,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every recoverable failure in the library is reported as an Error carrying a
// machine-checkable code; the message is for humans only.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace threadlens
