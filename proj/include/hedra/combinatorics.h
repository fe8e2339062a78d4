#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hedra/polyhedron.h"

namespace hedra {

// Multiset of face sizes for an n-faced solid: counts[i] is the number of
// faces with i+3 sides, for side counts 3 … n-1.
struct FaceVector {
    int n = 0;
    std::vector<int> counts;
    bool even_edge_sum = false;  // whether sum of size*count is even

    int total() const;
};

// Streams every nonnegative integer solution of
//   x_3 + x_4 + ... + x_{n-1} = n
// in lexicographic order, annotating each with the edge-sum parity. The
// solution count is C(2n-4, n), which grows into the billions by n = 20:
// prefer the visitor form for large n.
void enumerate_face_vectors(int n, const std::function<void(const FaceVector&)>& visit);
std::vector<FaceVector> enumerate_face_vectors(int n);

// C(2n-4, n): the number of solutions enumerated above.
std::uint64_t face_vector_count(int n);

// Face cycles over abstract vertex labels; geometry forgotten.
struct CombinatorialType {
    std::vector<std::vector<int>> faces;
};

CombinatorialType combinatorial_type(const Polyhedron& p);

// Violated structure invariants (empty when the incidence structure is a
// closed, consistently oriented, connected 2-sphere).
std::vector<std::string> validate_type(const CombinatorialType& t);
void require_valid_type(const CombinatorialType& t);

FaceVector face_vector_of(const CombinatorialType& t);

// For each vertex label, the cycle of incident faces in rotation order
// (consecutive entries share an edge at the vertex). Requires a valid type.
std::vector<std::vector<int>> vertex_face_cycles(const CombinatorialType& t);

// The dual incidence structure: one vertex per face of t, one face per
// vertex of t (its face cycle). Dualizing twice returns a relabeling of t.
CombinatorialType dual_type(const CombinatorialType& t);

// Label-independent fingerprint: two types get equal codes exactly when some
// vertex bijection maps one onto the other (mirror images included). Found
// by canonicalizing the rotation system over every starting edge and both
// orientations; cost grows with the square of the edge count, comfortable
// through a few dozen vertices.
std::string canonical_code(const CombinatorialType& t);

// The two k-gonal base faces when the type is a k-gonal prism: two disjoint
// k-gons covering all vertices, k quadrilateral walls, each wall sharing one
// edge with each base. Ties (the cube) resolve to the lexicographically
// smallest face-index pair.
std::optional<std::pair<int, int>> is_combinatorial_prism(const CombinatorialType& t);

enum class FiveHedronClass { TriangularPrism, QuadrilateralPyramid };

// Every valid 5-faced type is one of the two classes; anything else throws
// ClassificationFailure (and OutOfRange when the face count is not 5).
FiveHedronClass classify_5hedron(const CombinatorialType& t);

struct EdgeLinesResult {
    bool concurrent = false;
    Vec3 point;  // meaningful only when concurrent
};

// For a realized triangular prism: whether the three lines through the side
// edges are mutually parallel or meet at one point (returned). Throws
// RelationFailure when the lines do neither within tolerance.
EdgeLinesResult edge_lines_relation(const Polyhedron& p);

}  // namespace hedra
