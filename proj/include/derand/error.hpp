#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derand {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An instance violates its type invariants.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// A generator could not honor its parameters.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// The operation declines to run, e.g. an enumeration space that is too large.
class Refusal : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace derand
