#pragma once

#include <stdexcept>
#include <string>

namespace boundpair {

// Invalid physical parameters or arguments (even ring size, U = 0 where a
// bound state is required, out-of-range sites, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An eigensolver or propagator failed to meet its tolerance, or a bound
// state could not be isolated from the continuum.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested run cannot be measured faithfully: packets overlap at
// t = 0, a lead is too short for the packet to clear the scatterer, etc.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boundpair
