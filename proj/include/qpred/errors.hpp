#pragma once

#include <stdexcept>
#include <string>

namespace qpred {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input shapes do not match (e.g. partial trace with wrong factor dims).
struct DimensionError : Error {
  using Error::Error;
};

// hermitian_eig received a matrix that is not Hermitian within tolerance.
struct NotHermitianError : Error {
  using Error::Error;
};

// Scalar parameter outside its domain (p outside [0,1], kappa <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

// A state or channel violates one of its invariants beyond tolerance.
struct ValidationError : Error {
  using Error::Error;
};

// Two algebraically equivalent routes disagree beyond tolerance.
struct ConsistencyError : Error {
  using Error::Error;
};

// Degenerate steady-state eigenspace where a unique state was required.
struct AmbiguityError : Error {
  using Error::Error;
};

// Propagation produced a state that fails validation.
struct IntegratorError : Error {
  using Error::Error;
};

// Malformed state/channel file.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace qpred
