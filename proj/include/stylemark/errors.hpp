#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stylemark {

// Input or invariant violation: bad data, bad arguments, empty fingerprints.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recording parse failure; carries the 1-based line number of the offending line.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Filesystem failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stylemark
