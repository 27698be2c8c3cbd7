#pragma once

#include <stdexcept>
#include <string>

namespace duoidal {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between matrices, spans or bimodules.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input data violating an axiom (category law, module law, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A construction was requested outside the situation where it exists,
// e.g. inverting a non-bijective map or asking for an antipode of a
// bialgebroid whose Galois map is singular.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent external input; the message carries its location.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace duoidal
