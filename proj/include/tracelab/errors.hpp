#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

// Three top-level families, matching the CLI exit-code contract:
// usage/parse errors (exit 2), domain/regime errors (exit 3),
// budget exhaustion (exit 4).

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct BudgetError : Error {
    using Error::Error;
};

struct ParseError : UsageError {
    using UsageError::UsageError;
};

struct BadInput : DomainError {
    using DomainError::DomainError;
};

struct DegenerateIsometricCircle : DomainError {
    DegenerateIsometricCircle() : DomainError("isometric circle undefined: c = 0") {}
};

struct NotHyperbolic : DomainError {
    NotHyperbolic() : DomainError("operation requires a hyperbolic element") {}
};

struct DegenerateAxis : DomainError {
    DegenerateAxis() : DomainError("axis is a vertical line (c = 0), not a circle") {}
};

struct StructureMismatch : DomainError {
    StructureMismatch() : DomainError("second rows are not proportional with the given factor") {}
};

struct TraceBelowTwo : DomainError {
    TraceBelowTwo() : DomainError("trace must be >= 2") {}
};

struct UnsupportedThirdBoundary : DomainError {
    UnsupportedThirdBoundary() : DomainError("third boundary must be a cusp (trace 2)") {}
};

struct UpperTriangularInput : DomainError {
    UpperTriangularInput() : DomainError("generator has c = 0; only parabolic elements may be upper triangular") {}
};

struct InvalidYPiece : DomainError {
    using DomainError::DomainError;
};

struct SymbolicInput : DomainError {
    using DomainError::DomainError;
};

struct NoSuchHexagon : DomainError {
    NoSuchHexagon() : DomainError("no right-angled hexagon with these sides (arccosh argument < 1)") {}
};

struct RegimeViolation : DomainError {
    using DomainError::DomainError;
};

struct BadRegime : DomainError {
    using DomainError::DomainError;
};

struct DepthTooLarge : BudgetError {
    using BudgetError::BudgetError;
};

} // namespace tracelab
