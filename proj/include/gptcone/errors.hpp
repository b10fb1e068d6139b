#pragma once

#include <stdexcept>
#include <string>

namespace gptcone {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input failed a structural check (Hermiticity, normalization, schema).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operands have incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter is outside the documented range or a precondition does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace gptcone
