#pragma once

#include "hedra/polyhedron.h"

namespace hedra {

struct Insphere {
    Vec3 center;
    double radius = 0.0;
};

// Chebyshev center of a validated convex polyhedron: the center maximizing
// the minimum distance to the face planes, found by a small dense linear
// program over the face half-space constraints. Throws NonConvexInput when
// some vertex lies outside a face plane, DegenerateInput or NumericalFailure
// when no positive-radius ball fits.
Insphere insphere(const Polyhedron& p);

// The LP itself, exposed for reuse and direct testing:
// maximize r subject to dot(n_i, c) + r <= d_i over planes with unit normals.
// Requires a known interior point so the program starts feasible.
Insphere chebyshev_center(const std::vector<Plane>& planes, const Vec3& interior_point);

}  // namespace hedra
