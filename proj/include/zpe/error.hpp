#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zpe {

enum class ErrorKind {
  InvalidDirection,
  NonPositiveNorm,
  SchemeType,
  InvalidMode,
  Lookup,
  Capacity,
  TruncationRisk,
  SymmetryRequired,
  Aliasing,
  Resolution,
  Parse,
  Config,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDirection: return "invalid-direction";
    case ErrorKind::NonPositiveNorm: return "non-positive-norm";
    case ErrorKind::SchemeType: return "scheme-type";
    case ErrorKind::InvalidMode: return "invalid-mode";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::TruncationRisk: return "truncation-risk";
    case ErrorKind::SymmetryRequired: return "symmetry-required";
    case ErrorKind::Aliasing: return "aliasing";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code logic) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::Parse, std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace zpe
