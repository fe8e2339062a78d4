#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hedra/geo.h"

namespace hedra {

// Closed polyhedral surface: vertex coordinates plus face cycles of vertex
// indices. Every face cycle is oriented so its normal points outward.
struct Polyhedron {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;
};

struct Measures {
    double surface_area = 0.0;
    double volume = 0.0;
    double cost = 0.0;      // surface_area^3 / volume^2, scale invariant
    double diameter = 0.0;  // max pairwise vertex distance
};

// Plane in Hessian form: dot(normal, x) = offset, normal of unit length.
struct Plane {
    Vec3 normal;
    double offset = 0.0;
};

struct PlaneFit {
    Plane plane;
    double max_deviation = 0.0;  // max |dot(n, v) - offset| over the points
};

// Relative tolerance (times diameter) below which a face counts as planar.
inline constexpr double kPlanarityTol = 1e-9;

// --- Structural validation -------------------------------------------------

// Returns the list of violated invariants, empty when the mesh is a closed,
// consistently oriented, planar-faced 2-manifold with positive volume.
// Entries name the invariant and the offending face or edge.
std::vector<std::string> validate(const Polyhedron& p);

// Throws InvalidPolyhedron listing the violations when validate() is nonempty.
void require_valid(const Polyhedron& p);

// --- Per-face helpers (no validation; faces assumed planar) -----------------

// Newell normal: half of it has length equal to the polygon area and points
// along the face normal; exact for any planar polygon, convex or not.
Vec3 face_vector_area(const Polyhedron& p, int face);

Vec3 face_unit_normal(const Polyhedron& p, int face);
double face_area(const Polyhedron& p, int face);

// Area centroid of the face polygon (not the vertex average).
Vec3 face_centroid(const Polyhedron& p, int face);

// Plane through the face: unit normal matching the face orientation, offset
// from the least-squares fit through the face vertices.
PlaneFit face_plane(const Polyhedron& p, int face);

// --- Whole-mesh quantities ---------------------------------------------------

// Raw accumulators without validation; used by hot optimizer loops.
double surface_area_raw(const Polyhedron& p);
double volume_raw(const Polyhedron& p);  // signed, via the divergence theorem

// Volume by summing cones from `apex` over every face; equals volume_raw for
// closed meshes and serves as an independent cross-check of it.
double volume_about_point(const Polyhedron& p, const Vec3& apex);

double diameter(const Polyhedron& p);
Vec3 vertex_centroid(const Polyhedron& p);

// Measures of a validated mesh. Throws InvalidPolyhedron otherwise.
Measures measures(const Polyhedron& p);

// Uniform scaling about the origin so that volume becomes 1.
Polyhedron scale_to_unit_volume(const Polyhedron& p);

// Surface area after scaling to unit volume: cost^(1/3).
double unit_area(const Polyhedron& p);

// --- Edges and angles --------------------------------------------------------

// Undirected edges (a < b), sorted lexicographically.
std::vector<std::pair<int, int>> edges(const Polyhedron& p);

double min_edge_length(const Polyhedron& p);

// Interior dihedral angle in degrees per undirected edge, in (0, 360).
// Convex edges give angles below 180, reflex edges above.
std::map<std::pair<int, int>, double> dihedral_angles(const Polyhedron& p);

// --- Predicates ----------------------------------------------------------------

// Every vertex lies on the inner side of every face plane within
// tol_factor * diameter.
bool is_convex(const Polyhedron& p, double tol_factor = 1e-9);

// Reverses all face cycles if the signed volume is negative. Fixes meshes
// assembled with unknown global orientation; per-face consistency must
// already hold.
Polyhedron oriented_positive(Polyhedron p);

}  // namespace hedra
