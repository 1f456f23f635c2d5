#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emtopo {

enum class ErrorCode {
  InvalidIndex,
  InvalidCoordinate,
  DuplicateSimplex,
  DegenerateMesh,
  Overflow,
  NotACycle,
  DegreeError,
  SupportError,
  SingularSource,
  BranchAmbiguity,
  IntegralityViolation,
  ComplexMismatch,
  StencilError,
  ParseError,
  IoError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::DegenerateMesh: return "DegenerateMesh";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::DegreeError: return "DegreeError";
    case ErrorCode::SupportError: return "SupportError";
    case ErrorCode::SingularSource: return "SingularSource";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::IntegralityViolation: return "IntegralityViolation";
    case ErrorCode::ComplexMismatch: return "ComplexMismatch";
    case ErrorCode::StencilError: return "StencilError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library. The code is machine readable and is
/// what the CLI reports in its error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace emtopo
