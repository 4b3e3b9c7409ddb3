#pragma once

#include <stdexcept>
#include <string>

namespace parityrank {

// An input violates the hypothesis of the operation it was passed to.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A point in the kernel of an isogeny was handed to the isogeny.
class KernelPointError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A hypothesis outside the configurations for which a bound is proven.
class OutsideProvenScope : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A computed object failed one of its own consistency checks.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parityrank
