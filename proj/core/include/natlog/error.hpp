#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace natlog {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An application whose argument does not fit the head's next expected type.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// push/pop across a boundary that has nothing left to move.
class BoundaryError : public Error {
 public:
  using Error::Error;
};

class AnchorError : public Error {
 public:
  using Error::Error;
};

class KbError : public Error {
 public:
  KbError(std::string message, std::size_t line) : Error(std::move(message)), line_(line) {}
  explicit KbError(std::string message) : Error(std::move(message)) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class ParseError : public Error {
 public:
  ParseError(std::string message, std::string token, std::size_t offset)
      : Error(std::move(message)), token_(std::move(token)), offset_(offset) {}
  const std::string& token() const noexcept { return token_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

/// Malformed proof/corpus/explanation files, or requests that need a closed proof.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace natlog
