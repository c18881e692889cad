#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subquest {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class CorruptRecord : public IoError {
 public:
  using IoError::IoError;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidExtension : public Error {
 public:
  using Error::Error;
};

}  // namespace subquest
