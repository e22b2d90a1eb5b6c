#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqc {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain rule: index out of range,
/// momentum inside a function argument, unknown symbol, table mismatch.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(message) {}
  ValidationError(const std::string& message, std::size_t position)
      : Error(message), position_(position), has_position_(true) {}

  bool has_position() const { return has_position_; }
  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
  bool has_position_ = false;
};

/// Syntax error in expression text. `position` is a byte offset into the
/// input and points at the first offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string message, std::string expected)
      : Error(message + " at position " + std::to_string(position)),
        position_(position),
        message_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& message() const { return message_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string message_;
  std::string expected_;
};

}  // namespace hqc
