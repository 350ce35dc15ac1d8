#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qadio {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed equation text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Argument shape or range mismatch (arity, mode index, parameter domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size budget (dimension cap, scan budget) would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The integrator produced non-finite amplitudes.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qadio
