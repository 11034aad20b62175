#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swme {

/// Root of all library exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or degenerate user input (tabulations, grids, files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A text file could not be parsed. Carries the 1-based line number (0 when
/// the error is not tied to a line).
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A required input file does not exist or cannot be opened.
class FileNotFoundError : public InputError {
 public:
  using InputError::InputError;
};

/// The input file is well-formed but uses a layout this code does not handle.
class UnsupportedFormatError : public InputError {
 public:
  using InputError::InputError;
};

/// Non-finite values reached a matrix or source evaluation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A state is too close to dry (h below the floor) for the requested operation.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// Invalid model, scenario or boundary configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Unrecoverable failure inside a time step (NaN, singular implicit system).
class StepError : public Error {
 public:
  using Error::Error;
};

/// Model output and reference data cannot be compared.
class ComparisonError : public Error {
 public:
  using Error::Error;
};

}  // namespace swme
