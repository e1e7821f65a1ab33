#pragma once

#include <stdexcept>
#include <string>

namespace gha {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax errors, unknown symbols, bad JSON.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold (division by zero,
/// invalid descriptor, continuum of orbits, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands come from different scalar backends or presentations.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Floating-point iteration failed to converge or exceeded a guard.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace gha
