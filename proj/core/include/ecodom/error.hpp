#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ecodom {

/// Malformed or unreadable input: bad file, schema mismatch, parse error.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A CSV/JSON row-level problem. `line` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct ValidationError {
  std::string entity;  // e.g. "opening 'win_b1'"
  std::string field;
  std::string message;

  std::string to_string() const;
  bool operator==(const ValidationError&) const = default;
};

/// Thrown when an operation requires a valid description and gets an invalid one.
class ValidationFailed : public InputError {
 public:
  explicit ValidationFailed(std::vector<ValidationError> errors);

  const std::vector<ValidationError>& errors() const noexcept { return errors_; }

 private:
  std::vector<ValidationError> errors_;
};

}  // namespace ecodom
