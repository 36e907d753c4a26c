#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mero {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is 1-based; end of input is
/// reported as `text.size() + 1`.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("syntax error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its admissible domain (pole on a
/// sampling circle, origin inside an inverted disk, bad parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical construction failed at a specific index or step.
class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& message, std::size_t index)
      : Error(message), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace mero
