#pragma once

#include <vector>

#include "hedra/polyhedron.h"

namespace hedra {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

// Planar polygon as a counterclockwise vertex cycle.
using Polygon = std::vector<Vec2>;

double polygon_area(const Polygon& poly);       // signed, positive when CCW
double polygon_perimeter(const Polygon& poly);
Vec2 polygon_centroid(const Polygon& poly);     // area centroid

// Regular k-gon with unit side, vertices on a circle about the origin.
// 3 <= k <= 64.
Polygon regular_polygon(int k);

// Pentagons circumscribed about a unit circle with three 120-degree and two
// 90-degree interior angles; the right angles are separated in the first
// shape and adjacent in the second. Same area and perimeter by construction.
Polygon cairo_pentagon();
Polygon prismatic_pentagon();

// Cheapest right prism over the given base shape, rescaled to unit volume.
struct PrismSpec {
    Polygon base;         // rescaled copy of the input base
    double A0 = 0.0;      // rescaled base area
    double P0 = 0.0;      // rescaled base perimeter
    double h = 0.0;       // prism height, A0 * h = 1
    double surface_area = 0.0;
};

// Height and scale minimizing the surface area of a unit-volume right prism
// over bases similar to the input: h = (4*sqrt(A0)/P0)^(2/3) and surface
// area 3*(P0^2/(2*A0))^(1/3), both invariant under scaling the input.
PrismSpec optimal_prism(const Polygon& base);

// Right prism: base in the z = 0 plane with its area centroid at the origin,
// top copy at z = h. Walls stay planar for any simple base polygon.
Polyhedron make_right_prism(const Polygon& base, double h);

}  // namespace hedra
