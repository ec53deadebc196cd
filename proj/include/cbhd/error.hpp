#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbhd {

enum class ErrorCode {
  NormTooLarge,
  OutOfRange,
  DegenerateB,
  BadInitial,
  NonPositiveField,
  MajorantViolation,
  IntegrationFailure,
  InvalidArgument,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateB: return "DegenerateB";
    case ErrorCode::BadInitial: return "BadInitial";
    case ErrorCode::NonPositiveField: return "NonPositiveField";
    case ErrorCode::MajorantViolation: return "MajorantViolation";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for the errors that mean "the field is not defined at this point".
inline bool is_domain_error(const Error& e) {
  return e.code() == ErrorCode::NormTooLarge || e.code() == ErrorCode::OutOfRange;
}

}  // namespace cbhd
