#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

// Base class for all library-specific failures.
struct FloquetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A winding-number loop passed within gap_tolerance of the origin: the
// spectral gap protecting the invariant is closed and the result would be
// meaningless.  Carries the offending momentum.
struct GapClosureError : FloquetError {
    double k;
    GapClosureError(double k_, const std::string& what_)
        : FloquetError(what_), k(k_) {}
};

// Adaptive refinement hit its sample cap with phase steps still too large.
struct NonConvergenceError : FloquetError {
    using FloquetError::FloquetError;
};

// A matrix exponential or propagator produced non-finite entries
// (possible for strongly non-Hermitian parameters).
struct NumericalOverflowError : FloquetError {
    using FloquetError::FloquetError;
};

// Malformed run specification (bad binding expression, bad axis, ...).
struct SpecError : FloquetError {
    using FloquetError::FloquetError;
};

// Chain too small to hold the longest hopping stencil plus edges.
struct InvalidSizeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace floquet
