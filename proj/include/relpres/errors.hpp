#pragma once

#include <stdexcept>
#include <string>

namespace relpres {

enum class ErrorCode {
  MixedBackend,
  ZeroDirection,
  InvalidElement,
  InvalidTable,
  UnknownFactor,
  UnknownGenerator,
  IdentityRelator,
  SplittingCase,
  NotUnimodular,
  TooLarge,
  UndecidableZ,
  NotSpherical,
  NoExteriorVertex,
  TemplateMismatch,
  NontrivialInteriorLabel,
  NotMergeable,
  SchemaError,
};

const char* error_code_name(ErrorCode code);

// Domain error carrying a stable code so callers (and the CLI) can map
// failures to exit statuses without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedBackend: return "MixedBackend";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::UnknownFactor: return "UnknownFactor";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::IdentityRelator: return "IdentityRelator";
    case ErrorCode::SplittingCase: return "SplittingCase";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UndecidableZ: return "UndecidableZ";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::NoExteriorVertex: return "NoExteriorVertex";
    case ErrorCode::TemplateMismatch: return "TemplateMismatch";
    case ErrorCode::NontrivialInteriorLabel: return "NontrivialInteriorLabel";
    case ErrorCode::NotMergeable: return "NotMergeable";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "UnknownError";
}

}  // namespace relpres
