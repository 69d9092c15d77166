#pragma once

#include <stdexcept>
#include <string>

namespace subphase {

// Error taxonomy used across the library. The CLI maps these onto process
// exit codes: validation -> 1, numeric failure -> 2 (verification failures
// are reported by the verify command itself with exit 3).

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: malformed spec, out-of-range parameter, broken invariant
// on a constructed object.
struct ValidationError : Error {
    using Error::Error;
};

// Array / grid shape mismatch between cooperating objects.
struct ShapeError : ValidationError {
    using ValidationError::ValidationError;
};

// Time outside the model's span.
struct RangeError : ValidationError {
    using ValidationError::ValidationError;
};

// A numeric contract was violated at runtime: non-finite values, residues
// above bound, eigensolver non-convergence.
struct NumericError : Error {
    using Error::Error;
};

// Hermiticity or another structural convention violated on input.
struct ConventionError : ValidationError {
    using ValidationError::ValidationError;
};

// Degenerate eigenvalue cluster where a resolvable basis is required.
struct DegeneracyError : Error {
    using Error::Error;
};

// Norm drift or per-step phase increment too large for the grid; the fix is
// step refinement, not a different input.
struct ResolutionError : NumericError {
    using NumericError::NumericError;
};

// Total-phase overlap magnitude too small; the phase is undefined.
struct OrthogonalStatesError : NumericError {
    using NumericError::NumericError;
};

// Every channel fell below the amplitude threshold.
struct EmptySupportError : NumericError {
    using NumericError::NumericError;
};

// A masked channel re-acquired weight, so the phase-factored density matrix
// no longer reproduces the state.
struct FactorizationError : NumericError {
    using NumericError::NumericError;
};

// A channel weight vanishes identically (two-level mixing angle at 0 or pi),
// so its phase denominators are undefined.
struct SingularChannelError : NumericError {
    using NumericError::NumericError;
};

} // namespace subphase
