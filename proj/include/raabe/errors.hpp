#pragma once

#include <stdexcept>
#include <string>

namespace raabe {

/// Argument outside the domain of a function (log_gamma(x <= 0), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole, e.g. zeta(1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result magnitude beyond what the working representation can carry.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Working precision below what a cancellation-prone sum requires.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Method and parameters that cannot be combined (INTEGER_CLOSED at alpha = 0.5, ...).
class MethodError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace raabe
