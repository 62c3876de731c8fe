#pragma once

#include <stdexcept>
#include <string>

namespace penning {

/// Raised when a supercommutator is requested for an operand without a
/// definite fermion parity.
class GradingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the physical domain (sigma <= sqrt(2), qV <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidQuantumNumbers : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact operation was requested on parameters whose frequencies are not
/// rational.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownNameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace penning
