#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hlink {

enum class ErrorCode {
  validation,
  schema_invalid,
  budget_exceeded,
  inclusion_violated,
  not_regular,
  region_escapes_window,
  internal_inconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. The code is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message,
                           ErrorCode code = ErrorCode::validation)
      : Error(code, message) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& message)
      : Error(ErrorCode::budget_exceeded, message) {}
};

class PreconditionError : public Error {
 public:
  PreconditionError(ErrorCode code, const std::string& message)
      : Error(code, message) {}
};

/// Raised when a computed result contradicts a theorem the engine relies on.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& message)
      : Error(ErrorCode::internal_inconsistency, message) {}
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::schema_invalid: return "schema-invalid";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::inclusion_violated: return "inclusion-violated";
    case ErrorCode::not_regular: return "not-regular";
    case ErrorCode::region_escapes_window: return "region-escapes-window";
    case ErrorCode::internal_inconsistency: return "internal-inconsistency";
  }
  return "unknown";
}

}  // namespace hlink
