#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spin7 {

enum class ErrorKind {
  DivisionByZero,
  InvalidRule,
  NonTerminating,
  DegreeOverflow,
  DerivativeSymbolPresent,
  SingularSystem,
  ReductionFailure,
  SingularDenominator,
  StepUnderflow,
  SignViolation,
  InvalidSpec,
  DomainError,
};

std::string_view error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind), detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace spin7
