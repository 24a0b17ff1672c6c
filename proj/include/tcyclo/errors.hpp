#pragma once

#include <stdexcept>
#include <string>

namespace tcyclo {

// Bad arguments: invalid modulus, non-coprime inputs, out-of-range targets.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain on which a function is defined (chi for n >= pqr).
class OutOfDomain : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A configured search or size cap was hit before an answer was found.
class LimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Never expected for valid input; indicates a bug.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace tcyclo
