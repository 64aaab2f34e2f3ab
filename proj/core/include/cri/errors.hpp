#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cri {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument outside its domain (non-finite, zero divisor, ...).
class InvalidValue : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid input: empty sets, mismatched keys, unknown users.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A task cannot proceed, e.g. fewer than two applicants.
class TaskAborted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_{line} {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace cri
