#pragma once

#include <stdexcept>
#include <string>

namespace gpspec {

// Every failure raised by this library derives from Error, so callers can
// catch the whole family or pick off specific conditions.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument or parameter set (alpha/beta outside the admissible range,
// malformed rectangle, n < 1, ...).
struct DomainError : Error { using Error::Error; };

// z is within the exclusion distance of a pole -k^beta.
struct PoleProximity : Error { using Error::Error; };

// Truncation budget exhausted before the requested bound was certified.
struct ToleranceUnreachable : Error { using Error::Error; };

// arg z lies outside the sector |arg z| <= pi - delta.
struct SectorViolation : Error { using Error::Error; };

// The adaptive integrator ran out of subdivisions.
struct QuadratureFailure : Error { using Error::Error; };

// A point with |tau| >= 1/2 was handed to the mode map.
struct RegionViolation : Error { using Error::Error; };

// The fixed-point iteration left |tau| < 1/2 and no fallback recovered.
struct EscapedRegion : Error { using Error::Error; };

// Iteration budgets exhausted without meeting the tolerance.
struct NoConvergence : Error { using Error::Error; };

// A contour sample of the characteristic function sat too close to zero
// for the phase increment to be trusted.
struct BoundaryTooClose : Error { using Error::Error; };

// The accumulated phase did not land near an integer multiple of 2*pi.
struct NonIntegerWinding : Error { using Error::Error; };

// Rectangle bisection could not retain the zero (repeated boundary grazing).
struct LostZero : Error { using Error::Error; };

// Not enough points to perform a requested fit.
struct InsufficientData : Error { using Error::Error; };

// Invalid command line / run configuration.
struct ConfigError : Error { using Error::Error; };

} // namespace gpspec
