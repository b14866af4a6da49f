#pragma once

#include <stdexcept>
#include <string>

namespace gdesign {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input (bad identifiers, inconsistent structures).
class InputError : public Error {
 public:
  using Error::Error;
};

class UnknownGraph : public InputError {
 public:
  using InputError::InputError;
};

/// Syntax or structural error in a data file, tagged with the 1-based line.
class ParseError : public InputError {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  std::string source_;
  int line_;
};

/// A construction needs data or ingredients that are not available.
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

/// A constructed object failed its exact-coverage check.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class SearchTimeout : public Error {
 public:
  using Error::Error;
};

}  // namespace gdesign
