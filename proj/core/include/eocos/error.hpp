#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eocos {

enum class ErrorCode {
  StaleMove,
  UnknownItem,
  UnknownEndpoint,
  InvalidStructure,
  InvalidConfig,
  ReportMismatch,
};

std::string_view to_string(ErrorCode code);

// Raised by engine operations whose preconditions the caller violated.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eocos
