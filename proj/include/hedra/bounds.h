#pragma once

#include <optional>
#include <random>
#include <string>

#include "hedra/polyhedron.h"

namespace hedra {

struct BoundResult {
    double bound_value = 0.0;
    std::optional<std::string> attained_by;
};

// Lower bound on the surface area of any unit-volume convex polyhedron with
// f faces: (54(f-2) tan w (4 sin^2 w - 1))^(1/3) with w = pi*f/(6(f-2)).
// Sharp exactly at f = 4, 6, 12 (regular tetrahedron, cube, dodecahedron).
BoundResult goldberg_bound(int f);

// Lower bound on the total side-face area of a pyramid over a base of area S
// and perimeter p with apex at height h: sqrt((2S)^2 + p^2 h^2) / 2. Equality
// for a base circumscribed about a circle with the apex over its center.
double pyramid_lateral_bound(double S, double p, double h);

// The cheapest unit-volume pyramid over a quadrilateral: right pyramid over
// a square, in closed form, with its realization.
struct SquarePyramidOptimum {
    double base_side = 0.0;     // 2^(-1/6) * 3^(1/3)
    double height = 0.0;        // 6^(1/3)
    double surface_area = 0.0;  // 2^(5/3) * 3^(2/3)
    Polyhedron shape;           // unit volume
};
SquarePyramidOptimum square_pyramid_optimum();

// Every unit-volume convex polyhedron with surface area at most P0 has
// diameter at most 3*P0^2/(2*pi).
double diameter_bound(double P0);

// Random pyramid for property checks: base = 2-D convex hull of
// `base_points` points drawn uniformly in the unit disc (redrawn until the
// hull is non-degenerate), apex uniform over the base's bounding box at a
// height in [0.3, 2]. Not scaled to unit volume.
Polyhedron random_pyramid(std::mt19937& rng, int base_points = 6);

}  // namespace hedra
