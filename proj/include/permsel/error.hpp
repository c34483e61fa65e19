#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace permsel {

enum class ErrorKind {
  MissingReflexive,
  UnknownElement,
  DuplicateEntry,
  MissingEntry,
  DuplicateElement,
  GroundMismatch,
  NotSymmetric,
  CapExceeded,
  NotBijective,
  InvalidBase,
  NotEquivalence,
  ParseError,
};

const char* error_kind_name(ErrorKind kind);

/// Carries a machine-checkable kind plus (for document errors) a 1-based
/// line/column, and for witness-bearing kinds the offending element labels.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Error(ErrorKind kind, std::string message, std::string witness_a,
        std::string witness_b = {})
      : std::runtime_error(std::move(message)),
        kind_(kind),
        witness_a_(std::move(witness_a)),
        witness_b_(std::move(witness_b)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& witness_a() const { return witness_a_; }
  const std::string& witness_b() const { return witness_b_; }

  int line() const { return line_; }
  int column() const { return column_; }
  Error& at(int line, int column) {
    line_ = line;
    column_ = column;
    return *this;
  }

private:
  ErrorKind kind_;
  std::string witness_a_;
  std::string witness_b_;
  int line_ = 0;
  int column_ = 0;
};

}  // namespace permsel
