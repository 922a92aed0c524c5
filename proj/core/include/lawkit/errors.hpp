#pragma once

#include <stdexcept>
#include <string>

namespace lawkit {

/// Base class for all lawkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad flags, malformed files, violated invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// File-format error carrying the source location of the first bad record.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, long line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  long line() const { return line_; }

 private:
  std::string source_;
  long line_;
};

/// Numerical failure: non-finite values, overflow, diverged solves.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lawkit
