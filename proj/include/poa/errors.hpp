#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poa {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class StateError : public Error {
 public:
  using Error::Error;
};

class WireError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotSatisfiedError : public Error {
 public:
  using Error::Error;
};

class SubgroupError : public Error {
 public:
  using Error::Error;
};

class CircuitMismatch : public Error {
 public:
  using Error::Error;
};

class ExceptionalPointError : public Error {
 public:
  using Error::Error;
};

class KeyMismatchError : public Error {
 public:
  using Error::Error;
};

class FileExists : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data; carries the byte offset where decoding failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace poa
