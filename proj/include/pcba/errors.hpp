#pragma once

#include <stdexcept>
#include <string>

namespace pcba {

/// Raised when a caller breaks a documented precondition (dimension
/// mismatch, direction out of range, malformed box, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a request exceeds a fixed internal table (binomial degree).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace pcba
