#pragma once

#include <stdexcept>
#include <string>

namespace bks {

// Structured error taxonomy. Every failure mode that can reach a caller is
// one of these kinds; the CLI maps them onto process exit codes.
enum class ErrorKind {
  Arithmetic,   // division by zero, non-invertible element, domain violation
  Precision,    // a sign/comparison could not be certified at max precision
  Parse,        // malformed scalar expression or certificate JSON
  Validate,     // structurally well-formed certificate that fails verification
  Usage,        // bad CLI arguments or unusable input combination
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse errors carry a location so a corrupted certificate points at the
// offending token.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column)
      : Error(ErrorKind::Parse, std::move(message)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Arithmetic: return "arithmetic";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validate: return "validate";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace bks
