#pragma once

#include <stdexcept>
#include <string>

namespace obtk {

/// Malformed parameters or spec strings (bad weights, r >= t, unknown kind).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (t < 0, x not in the domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The estimator could not deliver its contract (non-monotone measure map, too few samples).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair modular diverges at every tested scale: the field is not in the space.
class NotInSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace obtk
