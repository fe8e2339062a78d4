#pragma once

#include "hedra/polyhedron.h"

namespace hedra {

// Convex hull of a 3-D point set by quickhull, with adjacent coplanar
// triangles merged into maximal planar faces. The result passes validate();
// interior and otherwise unused input points are absent from it. Throws
// DegenerateInput for fewer than 4 points or an affinely degenerate set.
Polyhedron convex_hull(const std::vector<Vec3>& points);

// Intersection of half-spaces dot(n_i, x) <= d_i, built through the dual
// point set n_i/d_i. Requires the origin strictly inside (all d_i > 0) and a
// bounded intersection. Redundant planes are dropped.
Polyhedron halfspace_intersection(const std::vector<Plane>& planes);

// Polar dual of a convex polyhedron containing the origin: one vertex per
// face plane at n/d, one face per vertex.
Polyhedron polar_dual(const Polyhedron& p);

// Convex clip: the part of a convex polyhedron with dot(n, x) <= d, with the
// section polygon added as a new face. Throws DegenerateInput when the plane
// misses the interior or passes within tol of a vertex (callers should nudge
// the plane instead of relying on tie-breaking).
Polyhedron clip(const Polyhedron& p, const Vec3& n, double d, double tol = 1e-9);

}  // namespace hedra
