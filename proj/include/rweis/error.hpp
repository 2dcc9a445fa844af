#pragma once

#include <stdexcept>
#include <string>

namespace rweis {

/// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: parse failures, wrong shapes, unsupported options.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Well-formed input outside the mathematical domain of an operation
/// (matrix not in Gamma0(N), cusp condition violated, pole of Gamma, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (e.g. a branch cocycle that does not
/// round to a root of unity).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rweis
