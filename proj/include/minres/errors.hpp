#pragma once

#include <stdexcept>
#include <string>

namespace minres {

/// Malformed configuration or input data (CLI exit code 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (exit code 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Quadrature, root finding or tabulation failed to converge (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural property that must hold for admissible inputs was violated.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace minres
