#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atorus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when inverting an element whose real part is (numerically) zero.
class NonUnit : public Error {
 public:
  using Error::Error;
};

/// Monomials in the pseudobasis failed to span the radical.
class SpanFailure : public Error {
 public:
  using Error::Error;
};

class SpecParseError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// log of a non-positive number, division by zero.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

class IndexNotBreve : public Error {
 public:
  using Error::Error;
};

}  // namespace atorus
