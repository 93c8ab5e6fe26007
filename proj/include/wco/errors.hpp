#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wco {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the open unit disc, or a non-finite result.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Log/PowReal argument landed on the principal-branch cut.
class BranchError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Construction rejected: not a self-map, zero weight, bad parameter.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position,
             std::vector<std::string> expected)
      : Error(format(message, position, expected)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(const std::string& message, std::size_t position,
                            const std::vector<std::string>& expected) {
    std::string out = message + " at position " + std::to_string(position);
    if (!expected.empty()) {
      out += "; expected one of:";
      for (const auto& e : expected) out += " " + e;
    }
    return out;
  }

  std::size_t position_;
  std::vector<std::string> expected_;
};

class ArityError : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace wco
