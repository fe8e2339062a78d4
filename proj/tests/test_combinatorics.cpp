#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "hedra/combinatorics.h"
#include "hedra/errors.h"
#include "hedra/hull.h"
#include "helpers.h"

using namespace hedra;
using namespace hedra::testing;

namespace {

// k-gonal prism incidence structure: bases 0..k-1 (bottom) and k..2k-1 (top).
CombinatorialType prism_type(int k) {
    CombinatorialType t;
    std::vector<int> bottom(k), top(k);
    for (int i = 0; i < k; ++i) bottom[i] = i, top[i] = k + i;
    std::reverse(bottom.begin(), bottom.end());  // outward below
    t.faces.push_back(bottom);
    t.faces.push_back(top);
    for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        t.faces.push_back({i, j, k + j, k + i});
    }
    return t;
}

// Pyramid over a k-gon: apex is vertex k.
CombinatorialType pyramid_type(int k) {
    CombinatorialType t;
    std::vector<int> base(k);
    for (int i = 0; i < k; ++i) base[i] = k - 1 - i;
    t.faces.push_back(base);
    for (int i = 0; i < k; ++i) t.faces.push_back({i, (i + 1) % k, k});
    return t;
}

CombinatorialType relabel(const CombinatorialType& t, std::mt19937& rng) {
    int nv = 0;
    for (const auto& f : t.faces)
        for (int v : f) nv = std::max(nv, v + 1);
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CombinatorialType out = t;
    for (auto& f : out.faces)
        for (int& v : f) v = perm[v];
    std::shuffle(out.faces.begin(), out.faces.end(), rng);
    // Also rotate each cycle to a random phase.
    for (auto& f : out.faces) {
        std::uniform_int_distribution<int> d(0, static_cast<int>(f.size()) - 1);
        std::rotate(f.begin(), f.begin() + d(rng), f.end());
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::vector<std::uint64_t> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, k); j >= 1; --j) row[j] += row[j - 1];
    return row[k];
}

// Translation prism (parallel side edges) or frustum toward an apex.
Polyhedron prism_embedding(std::mt19937& rng, bool frustum, Vec3* apex_out) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec3 a, b, c;
    double area2 = 0.0;
    do {
        a = {u(rng), u(rng), 0.0};
        b = {u(rng), u(rng), 0.0};
        c = {u(rng), u(rng), 0.0};
        area2 = cross(b - a, c - a).z;
    } while (std::fabs(area2) < 0.2);
    if (area2 < 0) std::swap(b, c);  // counterclockwise from above

    Vec3 d, e, f;
    if (frustum) {
        Vec3 apex{u(rng), u(rng), 2.0 + u(rng)};
        std::uniform_real_distribution<double> su(0.3, 0.8);
        double s = su(rng);
        d = apex + s * (a - apex);
        e = apex + s * (b - apex);
        f = apex + s * (c - apex);
        if (apex_out) *apex_out = apex;
    } else {
        Vec3 shift{u(rng), u(rng), 1.5 + std::fabs(u(rng))};
        d = a + shift;
        e = b + shift;
        f = c + shift;
    }
    Polyhedron p;
    p.vertices = {a, b, c, d, e, f};
    p.faces = {{2, 1, 0}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}};
    return p;
}

}  // namespace

TEST_CASE("face vector counts match the closed form") {
    CHECK(enumerate_face_vectors(4).size() == 1);
    CHECK(enumerate_face_vectors(4)[0].counts == std::vector<int>{4});
    CHECK(enumerate_face_vectors(5).size() == 6);
    CHECK(enumerate_face_vectors(6).size() == 28);
    for (int n = 4; n <= 10; ++n) {
        auto list = enumerate_face_vectors(n);
        CHECK(list.size() == face_vector_count(n));
        CHECK(face_vector_count(n) == binomial(2 * n - 4, n));
        for (const auto& fv : list) {
            CHECK(fv.total() == n);
            long long edge_sum = 0;
            for (size_t i = 0; i < fv.counts.size(); ++i)
                edge_sum += static_cast<long long>(i + 3) * fv.counts[i];
            CHECK(fv.even_edge_sum == (edge_sum % 2 == 0));
        }
    }
    CHECK(face_vector_count(14) == binomial(24, 14));
    CHECK(face_vector_count(20) == 7307872110ull);
    CHECK_THROWS_AS(enumerate_face_vectors(3), OutOfRange);
    CHECK_THROWS_AS(enumerate_face_vectors(21), OutOfRange);
}

TEST_CASE("face vector streaming visits every solution exactly once") {
    int n = 9;
    std::set<std::vector<int>> seen;
    std::uint64_t visits = 0;
    enumerate_face_vectors(n, [&](const FaceVector& fv) {
        ++visits;
        seen.insert(fv.counts);
    });
    CHECK(visits == face_vector_count(n));
    CHECK(seen.size() == visits);  // all distinct
}

TEST_CASE("canonical code is invariant under relabeling") {
    std::mt19937 rng(101);
    for (const CombinatorialType& t :
         {prism_type(3), prism_type(4), prism_type(6), pyramid_type(4),
          combinatorial_type(make_cube()), combinatorial_type(make_l_prism())}) {
        std::string base = canonical_code(t);
        for (int i = 0; i < 50; ++i) CHECK(canonical_code(relabel(t, rng)) == base);
    }
}

TEST_CASE("canonical code is invariant under mirror reflection") {
    for (const CombinatorialType& t : {prism_type(3), prism_type(5), pyramid_type(6)}) {
        CombinatorialType mirror = t;
        for (auto& f : mirror.faces) std::reverse(f.begin(), f.end());
        CHECK(canonical_code(mirror) == canonical_code(t));
    }
}

TEST_CASE("canonical code separates different types") {
    CHECK(canonical_code(prism_type(3)) != canonical_code(pyramid_type(4)));
    std::set<std::string> codes;
    for (int k = 3; k <= 8; ++k) codes.insert(canonical_code(prism_type(k)));
    CHECK(codes.size() == 6);
    // Same face count, different vectors: pentagonal pyramid vs triangular prism
    // both have 6 vertices; hexagonal pyramid vs... keep to the face-count-5 pair
    // plus cube vs 6-faced pentagonal pyramid.
    CHECK(canonical_code(combinatorial_type(make_cube())) != canonical_code(pyramid_type(5)));
}

TEST_CASE("cube type equals the hull of its corners") {
    Polyhedron cube = make_cube(2.0);
    Polyhedron h = convex_hull(cube.vertices);
    CHECK(canonical_code(combinatorial_type(cube)) == canonical_code(combinatorial_type(h)));
}

TEST_CASE("prism detection finds bases and rejects pyramids") {
    auto cube_bases = is_combinatorial_prism(combinatorial_type(make_cube()));
    REQUIRE(cube_bases.has_value());
    CHECK(cube_bases->first == 0);
    CHECK(cube_bases->second == 1);

    for (int k : {3, 4, 5, 6, 9}) {
        auto bases = is_combinatorial_prism(prism_type(k));
        REQUIRE(bases.has_value());
        CHECK(bases->first == 0);
        CHECK(bases->second == 1);
    }
    CHECK_FALSE(is_combinatorial_prism(pyramid_type(4)).has_value());
    CHECK_FALSE(is_combinatorial_prism(pyramid_type(6)).has_value());
    // The L-shaped prism is combinatorially an ordinary hexagonal prism.
    CHECK(is_combinatorial_prism(combinatorial_type(make_l_prism())).has_value());
}

TEST_CASE("five-faced types classify as prism or pyramid") {
    CHECK(classify_5hedron(prism_type(3)) == FiveHedronClass::TriangularPrism);
    CHECK(classify_5hedron(pyramid_type(4)) == FiveHedronClass::QuadrilateralPyramid);
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i) {
        CHECK(classify_5hedron(relabel(prism_type(3), rng)) == FiveHedronClass::TriangularPrism);
        CHECK(classify_5hedron(relabel(pyramid_type(4), rng)) ==
              FiveHedronClass::QuadrilateralPyramid);
    }
    CHECK_THROWS_AS(classify_5hedron(combinatorial_type(make_cube())), OutOfRange);
}

TEST_CASE("validate_type rejects broken structures") {
    CombinatorialType bad = prism_type(3);
    bad.faces[0] = {0, 1, 2, 0};  // repeated vertex
    CHECK_FALSE(validate_type(bad).empty());
    CombinatorialType open = prism_type(3);
    open.faces.pop_back();
    CHECK_FALSE(validate_type(open).empty());
    CHECK_THROWS_AS(canonical_code(open), InvalidPolyhedron);
}

TEST_CASE("side-edge lines: translation prisms are parallel") {
    std::mt19937 rng(33);
    for (int i = 0; i < 50; ++i) {
        Polyhedron p = prism_embedding(rng, false, nullptr);
        REQUIRE(validate(p).empty());
        EdgeLinesResult r = edge_lines_relation(p);
        CHECK_FALSE(r.concurrent);
    }
}

TEST_CASE("side-edge lines: frustums concur at the recovered apex") {
    std::mt19937 rng(34);
    for (int i = 0; i < 50; ++i) {
        Vec3 apex;
        Polyhedron p = prism_embedding(rng, true, &apex);
        REQUIRE(validate(p).empty());
        EdgeLinesResult r = edge_lines_relation(p);
        CHECK(r.concurrent);
        CHECK(norm(r.point - apex) < 1e-7 * diameter(p));
    }
}

TEST_CASE("side-edge lines: sheared prism stays parallel, never errors") {
    std::mt19937 rng(35);
    for (int i = 0; i < 100; ++i) {
        bool frustum = i % 2 == 0;
        Polyhedron p = prism_embedding(rng, frustum, nullptr);
        EdgeLinesResult r = edge_lines_relation(p);
        CHECK(r.concurrent == frustum);
    }
    CHECK_THROWS_AS(edge_lines_relation(make_cube()), OutOfRange);
}
