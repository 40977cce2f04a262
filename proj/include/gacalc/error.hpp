#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gacalc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain or numerical failure: division by zero, singular representation,
// branch violation, signature mismatch, ...
class MathError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. `column` is 1-based; 0 means "no position".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(column ? what + " at column " + std::to_string(column) : what), column_(column) {}

  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

}  // namespace gacalc
