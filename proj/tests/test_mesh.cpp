#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hedra/errors.h"
#include "hedra/hull.h"
#include "hedra/insphere.h"
#include "hedra/polyhedron.h"
#include "helpers.h"

using namespace hedra;
using namespace hedra::testing;
using std::numbers::pi;

TEST_CASE("unit cube measures match hand values") {
    Polyhedron cube = make_cube(1.0);
    CHECK(validate(cube).empty());
    Measures m = measures(cube);
    CHECK(m.surface_area == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(m.volume == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.cost == doctest::Approx(216.0).epsilon(1e-13));
    CHECK(m.diameter == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(unit_area(cube) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(edges(cube).size() == 12);
    CHECK(min_edge_length(cube) == doctest::Approx(1.0));
}

TEST_CASE("box measures scale with the dimensions") {
    Polyhedron box = make_box(2.0, 3.0, 5.0);
    Measures m = measures(box);
    CHECK(m.volume == doctest::Approx(30.0).epsilon(1e-13));
    CHECK(m.surface_area == doctest::Approx(2 * (6 + 10 + 15)).epsilon(1e-13));
    CHECK(m.diameter == doctest::Approx(std::sqrt(4 + 9 + 25)).epsilon(1e-13));
}

TEST_CASE("regular tetrahedron: volume, area, dihedral angle") {
    Polyhedron t = make_regular_tetrahedron(1.0);
    Measures m = measures(t);
    CHECK(m.volume == doctest::Approx(1.0 / (6.0 * std::sqrt(2.0))).epsilon(1e-13));
    CHECK(m.surface_area == doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    auto dih = dihedral_angles(t);
    CHECK(dih.size() == 6);
    const double expect = std::acos(1.0 / 3.0) * 180.0 / pi;  // 70.5288...
    for (const auto& [e, ang] : dih) CHECK(ang == doctest::Approx(expect).epsilon(1e-12));
    // The tetrahedral dihedral is irrational in degrees; nearest integer is off
    // by a visible margin.
    CHECK(std::fabs(expect - std::round(expect)) > 0.02);
}

TEST_CASE("cube dihedrals are all right angles") {
    auto dih = dihedral_angles(make_cube(2.0));
    CHECK(dih.size() == 12);
    for (const auto& [e, ang] : dih) CHECK(ang == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("nonconvex prism: reentrant edge has reflex dihedral") {
    Polyhedron l = make_l_prism();
    CHECK(validate(l).empty());
    Measures m = measures(l);
    CHECK(m.volume == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(m.surface_area == doctest::Approx(2 * 3.0 + 8.0).epsilon(1e-13));
    CHECK_FALSE(is_convex(l));
    auto dih = dihedral_angles(l);
    // Vertical edge at (1,1): vertices 3 (bottom) and 9 (top).
    CHECK(dih.at({3, 9}) == doctest::Approx(270.0).epsilon(1e-12));
    CHECK(dih.at({0, 6}) == doctest::Approx(90.0).epsilon(1e-12));
    // Nonconvex hexagonal cap still has the right area via the Newell normal.
    CHECK(face_area(l, 1) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("cost is scale invariant") {
    Polyhedron t = make_tetrahedron({0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {1, -1, 1});
    double base = measures(t).cost;
    for (double lambda : {0.1, 2.0, 17.0}) {
        Polyhedron s = t;
        for (auto& v : s.vertices) v = lambda * v;
        CHECK(measures(s).cost == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("scale_to_unit_volume is idempotent and reaches volume one") {
    Polyhedron box = make_box(2.0, 3.0, 5.0);
    Polyhedron u = scale_to_unit_volume(box);
    CHECK(measures(u).volume == doctest::Approx(1.0).epsilon(1e-13));
    Polyhedron uu = scale_to_unit_volume(u);
    for (size_t i = 0; i < u.vertices.size(); ++i)
        CHECK(norm(uu.vertices[i] - u.vertices[i]) < 1e-14 * measures(u).diameter);
    CHECK(unit_area(box) == doctest::Approx(measures(u).surface_area).epsilon(1e-13));
}

TEST_CASE("volume via divergence equals volume via cones from any apex") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (Polyhedron p : {make_cube(1.0), make_l_prism(),
                         make_tetrahedron({0, 0, 0}, {2, 0, 0}, {1, 1, 1}, {1, -1, 1})}) {
        double v = volume_raw(p);
        for (int k = 0; k < 5; ++k) {
            Vec3 apex{u(rng), u(rng), u(rng)};
            CHECK(volume_about_point(p, apex) == doctest::Approx(v).epsilon(1e-10));
        }
    }
}

TEST_CASE("tetrahedron volume matches the triple-product oracle") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int built = 0;
    while (built < 50) {
        Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)};
        Vec3 c{u(rng), u(rng), u(rng)}, d{u(rng), u(rng), u(rng)};
        double oracle = tetra_volume(a, b, c, d);
        if (oracle < 1e-3) continue;  // skip near-flat draws
        Polyhedron t = make_tetrahedron(a, b, c, d);
        CHECK(volume_raw(t) == doctest::Approx(oracle).epsilon(1e-12));
        ++built;
    }
}

TEST_CASE("face centroid of a rectangle is its center") {
    Polyhedron box = make_box(2.0, 4.0, 1.0);
    Vec3 c = face_centroid(box, 0);  // bottom rectangle
    CHECK(c.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.y == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.z == doctest::Approx(0.0).epsilon(1e-14));
    // Area centroid of the L-shaped cap: ((2*1)*(1,0.5) + (1*1)*(0.5,1.5))/3.
    Polyhedron l = make_l_prism();
    Vec3 lc = face_centroid(l, 1);
    CHECK(lc.x == doctest::Approx((2.0 * 1.0 + 1.0 * 0.5) / 3.0).epsilon(1e-13));
    CHECK(lc.y == doctest::Approx((2.0 * 0.5 + 1.0 * 1.5) / 3.0).epsilon(1e-13));
    CHECK(lc.z == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("validate rejects broken meshes") {
    SUBCASE("reversed face breaks orientation pairing") {
        Polyhedron cube = make_cube();
        std::reverse(cube.faces[0].begin(), cube.faces[0].end());
        CHECK_FALSE(validate(cube).empty());
        CHECK_THROWS_AS(require_valid(cube), InvalidPolyhedron);
    }
    SUBCASE("missing face leaves unmatched edges") {
        Polyhedron cube = make_cube();
        cube.faces.pop_back();
        CHECK_FALSE(validate(cube).empty());
    }
    SUBCASE("bent face exceeds the planarity tolerance") {
        Polyhedron cube = make_cube();
        cube.vertices[0].z += 1e-6;
        CHECK_FALSE(validate(cube).empty());
    }
    SUBCASE("tiny bend below tolerance is accepted") {
        Polyhedron cube = make_cube();
        cube.vertices[0].z += 1e-12;
        CHECK(validate(cube).empty());
    }
    SUBCASE("inside-out mesh has negative volume") {
        Polyhedron cube = make_cube();
        for (auto& f : cube.faces) std::reverse(f.begin(), f.end());
        CHECK_FALSE(validate(cube).empty());
        CHECK(oriented_positive(cube).faces == make_cube().faces);
    }
    SUBCASE("unused vertex is flagged") {
        Polyhedron cube = make_cube();
        cube.vertices.push_back({9, 9, 9});
        CHECK_FALSE(validate(cube).empty());
    }
    SUBCASE("non-finite coordinate is flagged") {
        Polyhedron cube = make_cube();
        cube.vertices[2].y = std::numeric_limits<double>::quiet_NaN();
        CHECK_FALSE(validate(cube).empty());
    }
}

TEST_CASE("insphere of a box touches the closest pair of walls") {
    Polyhedron cube = make_cube(2.0);
    Insphere s = insphere(cube);
    CHECK(s.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norm(s.center - Vec3{1, 1, 1}) < 1e-9);

    Polyhedron box = make_box(2.0, 6.0, 4.0);
    Insphere sb = insphere(box);
    CHECK(sb.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sb.center.x == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("insphere of a regular tetrahedron has radius 3V/A") {
    Polyhedron t = make_regular_tetrahedron(1.0);
    Measures m = measures(t);
    Insphere s = insphere(t);
    CHECK(s.radius == doctest::Approx(3.0 * m.volume / m.surface_area).epsilon(1e-9));
    CHECK(norm(s.center) < 1e-9);  // centered at the origin by symmetry
}

TEST_CASE("insphere rejects nonconvex input") {
    CHECK_THROWS_AS(insphere(make_l_prism()), NonConvexInput);
}

TEST_CASE("insphere radius is attained: no face is farther, none closer") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        Polyhedron box = make_box(u(rng), u(rng), u(rng));
        Insphere s = insphere(box);
        double lo = std::numeric_limits<double>::infinity();
        for (int f = 0; f < static_cast<int>(box.faces.size()); ++f) {
            Plane pl = face_plane(box, f).plane;
            lo = std::min(lo, pl.offset - dot(pl.normal, s.center));
        }
        CHECK(lo == doctest::Approx(s.radius).epsilon(1e-8));
    }
}

TEST_CASE("convex hull of cube corners rebuilds the cube") {
    Polyhedron cube = make_cube(2.0);
    Polyhedron h = convex_hull(cube.vertices);
    CHECK(h.vertices.size() == 8);
    CHECK(h.faces.size() == 6);
    for (const auto& f : h.faces) CHECK(f.size() == 4);
    CHECK(measures(h).volume == doctest::Approx(8.0).epsilon(1e-12));
    // Interior and duplicate points vanish.
    std::vector<Vec3> pts = cube.vertices;
    pts.push_back({1, 1, 1});
    pts.push_back({0, 0, 0});
    pts.push_back({1.5, 1.0, 1.0});
    Polyhedron h2 = convex_hull(pts);
    CHECK(h2.vertices.size() == 8);
    CHECK(h2.faces.size() == 6);
}

TEST_CASE("convex hull of the octahedron keeps all triangles") {
    std::vector<Vec3> pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    Polyhedron h = convex_hull(pts);
    CHECK(h.vertices.size() == 6);
    CHECK(h.faces.size() == 8);
    CHECK(measures(h).volume == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("convex hull of random sphere points is valid and contains them all") {
    for (unsigned seed : {1u, 2u, 3u}) {
        auto pts = sphere_points(100, seed);
        Polyhedron h = convex_hull(pts);
        CHECK(validate(h).empty());
        CHECK(is_convex(h));
        CHECK(h.vertices.size() == 100);  // sphere points are all extreme
        double v = measures(h).volume;
        CHECK(v < 4.0 / 3.0 * pi);
        CHECK(v > 0.5 * 4.0 / 3.0 * pi);
        // Every input point satisfies every face halfspace.
        for (int f = 0; f < static_cast<int>(h.faces.size()); ++f) {
            Plane pl = face_plane(h, f).plane;
            for (const Vec3& q : pts) CHECK(dot(pl.normal, q) <= pl.offset + 1e-9);
        }
    }
}

TEST_CASE("convex hull rejects degenerate inputs") {
    CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), DegenerateInput);
    std::vector<Vec3> line = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {4, 0, 0}};
    CHECK_THROWS_AS(convex_hull(line), DegenerateInput);
    std::vector<Vec3> plane_pts;
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 30; ++i) plane_pts.push_back({u(rng), u(rng), 0.25});
    CHECK_THROWS_AS(convex_hull(plane_pts), DegenerateInput);
    std::vector<Vec3> same(10, Vec3{1, 2, 3});
    CHECK_THROWS_AS(convex_hull(same), DegenerateInput);
}

TEST_CASE("polar dual swaps cube and octahedron") {
    Polyhedron cube = make_cube(2.0);
    for (auto& v : cube.vertices) v += Vec3{-1, -1, -1};  // center at origin
    Polyhedron oct = polar_dual(cube);
    CHECK(oct.vertices.size() == 6);
    CHECK(oct.faces.size() == 8);
    CHECK(measures(oct).volume == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    Polyhedron back = polar_dual(oct);
    CHECK(back.vertices.size() == 8);
    CHECK(back.faces.size() == 6);
    CHECK(measures(back).volume == doctest::Approx(8.0).epsilon(1e-12));
    // Dual of a shape without the origin inside is rejected.
    Polyhedron shifted = make_cube(1.0);
    for (auto& v : shifted.vertices) v += Vec3{5, 0, 0};
    CHECK_THROWS_AS(polar_dual(shifted), DegenerateInput);
}

TEST_CASE("halfspace intersection rebuilds the cube and drops redundant planes") {
    std::vector<Plane> planes = {
        {{1, 0, 0}, 1},  {{-1, 0, 0}, 1}, {{0, 1, 0}, 1},
        {{0, -1, 0}, 1}, {{0, 0, 1}, 1},  {{0, 0, -1}, 1},
    };
    Polyhedron cube = halfspace_intersection(planes);
    CHECK(cube.faces.size() == 6);
    CHECK(measures(cube).volume == doctest::Approx(8.0).epsilon(1e-12));

    planes.push_back({normalized(Vec3{1, 1, 1}), 5.0});  // far away, redundant
    Polyhedron same = halfspace_intersection(planes);
    CHECK(same.faces.size() == 6);
    CHECK(measures(same).volume == doctest::Approx(8.0).epsilon(1e-12));

    planes.push_back({{0, 0, 1}, -0.5});  // origin outside this halfspace
    CHECK_THROWS_AS(halfspace_intersection(planes), DegenerateInput);
}

TEST_CASE("clip slices a cube into a box of known volume") {
    Polyhedron cube = make_cube(1.0);
    Polyhedron lower = clip(cube, {0, 0, 1}, 0.25);
    CHECK(validate(lower).empty());
    CHECK(measures(lower).volume == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lower.faces.size() == 6);
    // Diagonal cut keeping a corner tetrahedron of volume 1/48.
    Polyhedron corner = clip(cube, {1, 1, 1}, 0.5);
    CHECK(measures(corner).volume == doctest::Approx(1.0 / 48.0).epsilon(1e-10));
    CHECK(corner.faces.size() == 4);
}

TEST_CASE("clip keeps everything, refuses everything, refuses vertex hits") {
    Polyhedron cube = make_cube(1.0);
    Polyhedron all = clip(cube, {0, 0, 1}, 2.0);
    CHECK(all.faces.size() == 6);
    CHECK_THROWS_AS(clip(cube, {0, 0, 1}, -1.0), DegenerateInput);
    CHECK_THROWS_AS(clip(cube, {0, 0, 1}, 0.0), DegenerateInput);  // touches bottom face
    CHECK_THROWS_AS(clip(cube, {1, 1, 1}, 3.0), DegenerateInput);  // tangent at a corner
}

TEST_CASE("clip of a convex body stays convex and loses volume monotonically") {
    auto pts = sphere_points(60, 9u);
    Polyhedron h = convex_hull(pts);
    double prev = measures(h).volume;
    for (double dd : {0.8, 0.5, 0.2, -0.1}) {
        Polyhedron c = clip(h, {0.3, -0.5, 0.81}, dd);
        CHECK(validate(c).empty());
        CHECK(is_convex(c));
        double v = measures(c).volume;
        CHECK(v < prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("clipping a tilted plane produces the expected section polygon") {
    Polyhedron cube = make_cube(2.0);
    // Plane x + y <= 3 trims a triangular prism of volume 1; section is a
    // rectangle through four side edges.
    Polyhedron c = clip(cube, {1, 1, 0}, 3.0);
    CHECK(measures(c).volume == doctest::Approx(7.0).epsilon(1e-12));
    bool found = false;
    for (const auto& f : c.faces) {
        Vec3 n = face_unit_normal(c, static_cast<int>(&f - c.faces.data()));
        if (dot(n, normalized(Vec3{1, 1, 0})) > 0.999) {
            found = true;
            CHECK(f.size() == 4);
        }
    }
    CHECK(found);
}

#include "hedra/truncate.h"

TEST_CASE("truncating a cube corner gives a 7-faced solid with less cost") {
    Polyhedron cube = make_cube(1.0);
    Polyhedron cut = truncate_vertex(cube, 6, 0.1);
    CHECK(validate(cut).empty());
    CHECK(cut.faces.size() == 7);
    CHECK(cut.vertices.size() == 10);
    CHECK(edges(cut).size() == 15);
    int tri = 0;
    for (const auto& f : cut.faces)
        if (f.size() == 3) ++tri;
    CHECK(tri == 1);
    CHECK(measures(cut).cost < 216.0);
    // Removed corner tetra has legs sqrt(3)*t.
    double t = 0.1;
    CHECK(measures(cut).volume ==
          doctest::Approx(1.0 - std::sqrt(3.0) / 2.0 * t * t * t).epsilon(1e-12));
}

TEST_CASE("truncation identity and error cases") {
    Polyhedron cube = make_cube(1.0);
    Polyhedron same = truncate_vertex(cube, 0, 0.0);
    CHECK(same.faces == cube.faces);
    CHECK_THROWS_AS(truncate_vertex(cube, 0, -0.1), OutOfRange);
    CHECK_THROWS_AS(truncate_vertex(cube, 99, 0.1), OutOfRange);
    // Reaching the adjacent corners: they sit at arc distance 1/sqrt(3).
    CHECK_THROWS_AS(truncate_vertex(cube, 0, 0.6), CutTooDeep);
    CHECK_NOTHROW(truncate_vertex(cube, 0, 0.57));
    // Reentrant corner of the L prism is rejected.
    CHECK_THROWS_AS(truncate_vertex(make_l_prism(), 3, 0.05), NonConvexVertex);
}

TEST_CASE("truncating a tetrahedron apex slices a similar corner") {
    Polyhedron t = make_regular_tetrahedron(1.0);
    double before = measures(t).cost;
    Polyhedron cut = truncate_vertex(t, 0, 0.05);
    CHECK(cut.faces.size() == 5);
    CHECK(measures(cut).cost < before);
    // Repeated truncation keeps shaving faces on.
    Polyhedron cut2 = truncate_vertex(cut, 0, 0.04);
    CHECK(cut2.faces.size() == 6);
    CHECK(validate(cut2).empty());
}
