#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewrad {

enum class ErrorCode {
  ShapeError,
  AssociativityViolation,
  OrderIncompatibility,
  DimensionMismatch,
  SizeCapExceeded,
  NotAnIdeal,
  LeibnizViolation,
  OrderViolation,
  ContextMismatch,
  NotNilpotent,
  SearchCapExceeded,
  InternalInconsistency,
  ArityMismatch,
  PreconditionFailed,
  NotInS,
  QuasiInverseFailure,
  CertificateFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse errors remember where in the input they happened (1-based).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                         std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace skewrad
