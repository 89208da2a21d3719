#pragma once

#include <stdexcept>
#include <string>

namespace mapc {

enum class ErrorKind {
  DimensionMismatch,
  FieldMismatch,
  Singular,
  NotSquare,
  NotAnnihilating,
  NotNilpotent,
  UnsupportedField,
  DivisionByZeroPoly,
  MalformedBoard,
  InapplicableOp,
  DegreeViolation,
  SingularMonodromy,
  TooLarge,
  ParseError,
  SpecError,
  Io,
  Internal,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mapc
