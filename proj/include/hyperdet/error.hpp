#pragma once

#include <stdexcept>
#include <string>

namespace hyperdet {

enum class ErrorKind {
  NvarsMismatch,
  DimensionMismatch,
  NotDivisible,
  DirectionVanishes,
  DegreeViolation,
  ZeroPolynomial,
  DegreeTooSmall,
  RoundingFailed,
  NotPD,
  Exhausted,
  NoSymmetricLift,
  SingularSuspected,
  NotHyperbolic,
  Parse,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; `kind` lets callers
// branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hyperdet
