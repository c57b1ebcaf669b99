#pragma once

#include <stdexcept>
#include <string>

namespace abcwave {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Factorization failed: pivot collapsed or matrix is structurally rank
// deficient.
struct SingularMatrixError : Error {
  using Error::Error;
};

// Iterative eigenvalue computation did not converge.
struct NoConvergenceError : Error {
  using Error::Error;
};

// Problem size exceeds a hard cap meant to keep dense computations tractable.
struct CapExceededError : Error {
  using Error::Error;
};

// Domain description is inconsistent (bad radii, too few subdivisions, ...).
struct InvalidSpecError : Error {
  using Error::Error;
};

// A coefficient violated its sign constraint at some node.
struct PositivityViolationError : Error {
  using Error::Error;
};

// Mesh generation produced a triangle with non-positive area.
struct DegenerateTriangleError : Error {
  using Error::Error;
};

// Vector or matrix sizes do not match the expected block layout.
struct DimensionMismatchError : Error {
  using Error::Error;
};

// The requested linear system has no unique solution for this coefficient
// regime (e.g. a pure-Neumann surface solve with zero reaction term).
struct SingularSystemError : Error {
  using Error::Error;
};

// The null-space/complement splitting is degenerate for these coefficients.
struct DegenerateSplitError : Error {
  using Error::Error;
};

// A configuration file could not be parsed.
struct ConfigParseError : Error {
  using Error::Error;
};

// A configuration file parsed but failed semantic validation.
struct ConfigValidationError : Error {
  using Error::Error;
};

}  // namespace abcwave
