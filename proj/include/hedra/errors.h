#pragma once

#include <stdexcept>
#include <string>

namespace hedra {

// Base class for all library errors. Subclasses exist so callers (tests,
// the CLI) can map failure kinds to exit codes without string matching.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mesh fails one or more structural invariants; message lists them.
struct InvalidPolyhedron : Error {
    using Error::Error;
};

// Operation requires a convex input and the mesh is not convex.
struct NonConvexInput : Error {
    using Error::Error;
};

// Input is geometrically degenerate (coplanar point set, zero-area base, ...).
struct DegenerateInput : Error {
    using Error::Error;
};

// Integer argument outside the supported range.
struct OutOfRange : Error {
    using Error::Error;
};

// Truncation depth reaches past the vertex neighborhood.
struct CutTooDeep : Error {
    using Error::Error;
};

// Truncation requested at a vertex that is not strictly convex.
struct NonConvexVertex : Error {
    using Error::Error;
};

// Text input could not be parsed; line is 1-based.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Name not present in the candidate registry.
struct UnknownName : Error {
    using Error::Error;
};

// Name is known but needs extra input (a combinatorial type file).
struct UnsupportedName : Error {
    using Error::Error;
};

// A 5-face structure matches neither of the two possible classes.
struct ClassificationFailure : Error {
    using Error::Error;
};

// Side-edge lines of an embedded prism are neither parallel nor concurrent.
struct RelationFailure : Error {
    using Error::Error;
};

// Generic numerical breakdown (linear program failure, singular system, ...).
struct NumericalFailure : Error {
    using Error::Error;
};

// Optimizer could not produce a minimizer of the requested type.
struct OptimizerFailure : Error {
    using Error::Error;
};

// An edge or face of the fixed combinatorial type degenerated during
// optimization: the type is not optimal as given. Carries the unit-volume
// surface area of the last consistent iterate for diagnostics.
struct CombinatoricsBroken : OptimizerFailure {
    double last_unit_area;
    CombinatoricsBroken(const std::string& what_, double last_unit_area_)
        : OptimizerFailure(what_), last_unit_area(last_unit_area_) {}
};

// Iteration budget exhausted without meeting the convergence test.
struct NoConvergence : OptimizerFailure {
    using OptimizerFailure::OptimizerFailure;
};

}  // namespace hedra
