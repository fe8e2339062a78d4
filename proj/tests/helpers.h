#pragma once

// Shared fixtures for the test binaries: canonical meshes with known-by-hand
// measures, plus deterministic random point clouds.

#include <cmath>
#include <random>
#include <vector>

#include "hedra/polyhedron.h"

namespace hedra::testing {

// Axis-aligned box [0,a]x[0,b]x[0,c] with outward quads.
inline Polyhedron make_box(double a, double b, double c) {
    Polyhedron p;
    p.vertices = {
        {0, 0, 0}, {a, 0, 0}, {a, b, 0}, {0, b, 0},
        {0, 0, c}, {a, 0, c}, {a, b, c}, {0, b, c},
    };
    p.faces = {
        {0, 3, 2, 1},  // bottom (z = 0), outward -z
        {4, 5, 6, 7},  // top (z = c), outward +z
        {0, 1, 5, 4},  // y = 0, outward -y
        {2, 3, 7, 6},  // y = b, outward +y
        {1, 2, 6, 5},  // x = a, outward +x
        {3, 0, 4, 7},  // x = 0, outward -x
    };
    return p;
}

inline Polyhedron make_cube(double a = 1.0) { return make_box(a, a, a); }

// Regular tetrahedron with the given edge length, centered at the origin.
inline Polyhedron make_regular_tetrahedron(double edge = 1.0) {
    double s = edge / (2.0 * std::sqrt(2.0));
    Polyhedron p;
    p.vertices = {
        {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s},
    };
    p.faces = {
        {0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2},
    };
    return p;
}

// Tetrahedron on arbitrary points, oriented outward.
inline Polyhedron make_tetrahedron(Vec3 a, Vec3 b, Vec3 c, Vec3 d) {
    Polyhedron p;
    p.vertices = {a, b, c, d};
    if (dot(cross(b - a, c - a), d - a) > 0)
        p.faces = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
    else
        p.faces = {{0, 1, 2}, {1, 0, 3}, {2, 1, 3}, {0, 2, 3}};
    return p;
}

// Right prism of height 1 over an L-shaped hexagon: a valid nonconvex mesh
// whose reentrant vertical edge has interior dihedral angle 270 degrees.
// Cross-section area 3, so the volume is 3.
inline Polyhedron make_l_prism() {
    Polyhedron p;
    // L outline, counterclockwise: (0,0) (2,0) (2,1) (1,1) (1,2) (0,2)
    const double xy[6][2] = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    for (auto& q : xy) p.vertices.push_back({q[0], q[1], 0.0});
    for (auto& q : xy) p.vertices.push_back({q[0], q[1], 1.0});
    p.faces.push_back({5, 4, 3, 2, 1, 0});        // bottom, outward -z
    p.faces.push_back({6, 7, 8, 9, 10, 11});      // top, outward +z
    for (int i = 0; i < 6; ++i) {
        int j = (i + 1) % 6;
        p.faces.push_back({i, j, j + 6, i + 6});  // side wall
    }
    return p;
}

// Independent volume oracle for a tetrahedron: scalar triple product.
inline double tetra_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return std::fabs(dot(cross(b - a, c - a), d - a)) / 6.0;
}

// Deterministic points on the unit sphere.
inline std::vector<Vec3> sphere_points(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Vec3> pts;
    pts.reserve(n);
    while (static_cast<int>(pts.size()) < n) {
        Vec3 v{g(rng), g(rng), g(rng)};
        double r = norm(v);
        if (r < 1e-6) continue;
        pts.push_back(v / r);
    }
    return pts;
}

}  // namespace hedra::testing
