#pragma once

#include "hedra/polyhedron.h"

namespace hedra {

// Cuts off vertex v with a plane perpendicular to the normalized sum of the
// unit vectors along the incident edges, placed at distance t from v along
// that direction. The incident edges gain one vertex each and the cut leaves
// a new polygonal face, so the face count rises by exactly one.
//
// t = 0 returns the input unchanged. Throws NonConvexVertex when the incident
// faces bend back past the cut direction (the plane would not be transverse),
// CutTooDeep when the plane at depth t fails to separate v from every other
// vertex, and OutOfRange for negative t or a bad vertex index.
Polyhedron truncate_vertex(const Polyhedron& p, int v, double t);

}  // namespace hedra
