// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A Bloch vector lies outside the unit ball (beyond tolerance).
class BlochOutOfBall : public Error {
 public:
  using Error::Error;
};

/// An operator that must be positive semidefinite has a negative eigenvalue.
class NotPositive : public Error {
 public:
  using Error::Error;
};

/// POVM effect positivity or normalization constraints are violated.
class InvalidPovm : public Error {
 public:
  using Error::Error;
};

/// A conditional probability is requested for an outcome of probability ~0.
class ZeroConditioningProbability : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A marginal denominator 1 - a_i^2 vanished in a closed-form expression.
class DegenerateMarginal : public Error {
 public:
  using Error::Error;
};

/// A closed-form denominator vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Unsupported random-access-code size n.
class UnsupportedN : public Error {
 public:
  using Error::Error;
};

/// Invalid search or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document or command line value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A probability table violates one of its structural invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qcorr
