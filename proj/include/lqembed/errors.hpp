#pragma once

#include <stdexcept>
#include <string>

namespace lqembed {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the supported class (bad exponent, malformed rational, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a function, e.g. Gamma at x <= 0.
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Requested derivative order beyond the supported bound.
class UnsupportedOrder : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Norm power N^q is not polynomial on the sphere (s*q not a positive integer).
class UnsupportedExponent : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Gamma(a)/Gamma(b) with a - b not a non-negative integer.
class UnreducibleGammaRatio : public Error {
 public:
  using Error::Error;
};

/// The perturbed function is not a norm at the requested lambda.
class NotANorm : public Error {
 public:
  using Error::Error;
};

/// A counterexample window collapses (e.g. dimension 2).
class DegenerateWindow : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagree; always a defect, never user error.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace lqembed
