#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loccalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic failure: division by zero, degenerate zero, inexact division.
class MathError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (expressions, flags, model files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression, carrying the 1-based column of the offending character.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t column)
      : InputError(message + " at column " + std::to_string(column)), column_(column) {}

  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Model file that does not follow the schema; the message names the offending field.
class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace loccalc
