#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hedra/combinatorics.h"
#include "hedra/geo.h"
#include "hedra/insphere.h"
#include "hedra/polyhedron.h"

namespace hedra {

// Per-face record of how far the inscribed sphere is from touching the face
// at its area centroid: T is the point of the face plane nearest the sphere
// center, C the face's area centroid. residual = |T - C|; deficit =
// |distance(center, plane) - radius|. Both vanish on every face exactly when
// the polyhedron circumscribes its insphere with tangency at the centroids —
// the first-order optimality condition for surface-area minimization at
// fixed volume within a combinatorial type.
struct FaceTangency {
    Vec3 tangency{};
    Vec3 centroid{};
    double residual = 0.0;
    double deficit = 0.0;
};

struct LindelofReport {
    Insphere insphere;
    std::vector<FaceTangency> faces;
    double max_residual = 0.0;
    double max_deficit = 0.0;
};

// Computes the insphere and the per-face tangency records, at the scale of
// the input (callers comparing against absolute tolerances should normalize
// to unit volume first). Throws NonConvexInput for non-convex input.
LindelofReport lindelof_check(const Polyhedron& p);

// A combinatorial type together with one support plane per face; the
// geometry is derived, never stored: each abstract vertex sits at the
// intersection of its incident face planes.
struct TypeEmbedding {
    CombinatorialType type;
    std::vector<Plane> planes;  // one per face, unit normals, n·x <= offset

    // Builds the derived polyhedron and validates it. Vertices of degree
    // three are exact plane-triple intersections; higher degrees use least
    // squares and require all incident planes to agree within
    // agreement_tol x diameter.
    Polyhedron realize(double agreement_tol = 1e-8) const;
};

// Reads the embedding off an existing polyhedron (planes fitted per face).
TypeEmbedding embedding_of(const Polyhedron& p);

// Constructs a valid convex realization of an abstract simple type from
// scratch: the dual (simplicial) type is drawn in the plane by a spring
// embedding, lifted to a convex cap by the equilibrium-stress
// correspondence, closed with the outer face, and dualized back. The result
// realizes t (verified by canonical code). Throws NumericalFailure when the
// lift or the dualization degenerates.
TypeEmbedding seed_embedding(const CombinatorialType& t);

// A finite set of orthogonal symmetries under which the optimizer keeps the
// embedding invariant. Build with from_generators, which closes the set
// under multiplication.
struct SymmetryGroup {
    std::vector<Mat3> elements;  // includes the identity
    static SymmetryGroup from_generators(const std::vector<Mat3>& gens);
};

struct TraceEntry {
    int iteration = 0;
    double cost = 0.0;       // area^3 / volume^2, scale-invariant
    double unit_area = 0.0;  // cbrt(cost)
    double step = 0.0;       // accepted line-search step, 0 for the seed row
};

struct MinimizeOptions {
    int restarts = 16;           // deterministic restart list 0..restarts-1
    int seed_index = -1;         // >= 0: run only this restart
    double perturbation = 0.02;  // plane jitter for restarts > 0
    int max_iterations = 4000;   // per restart
};

struct OptimizeResult {
    Polyhedron shape;  // unit volume
    double unit_area = 0.0;
    double lindelof_residual = 0.0;  // at unit-volume scale
    int winning_seed = 0;
    int iterations = 0;
    std::vector<TraceEntry> trace;  // accepted iterates of the winning restart
};

// Minimizes cost = area^3 / volume^2 over the face-plane parameters of the
// fixed combinatorial type, by projected gradient descent with central
// differences, deterministic multi-restart, and optional symmetry
// averaging. Projection renormalizes normals, averages over the symmetry
// group, recenters the insphere at the origin, and rescales to unit volume.
// A restart converges when the relative cost change over a 100-iteration
// window drops below 1e-12 and (absent a symmetry constraint) the tangency
// residual at unit scale is below 1e-5. Throws CombinatoricsBroken when
// every restart drives some edge below 1e-7 x diameter (the minimum within
// this type lies on a degeneration boundary), and NoConvergence when no
// restart meets the criterion for another reason.
OptimizeResult minimize_within_type(const CombinatorialType& t, const TypeEmbedding& seed,
                                    const SymmetryGroup* symmetry = nullptr,
                                    const MinimizeOptions& options = {});

struct TruncationExperiment {
    std::vector<std::pair<double, double>> samples;  // (t, cost), t decreasing
    double untruncated_cost = 0.0;
    double derivative_at_zero = 0.0;  // one-sided estimate from the smallest t
};

// Evaluates cost(truncate_vertex(p, v, t)) on a geometric grid of depths,
// starting at (max feasible depth)/steps and halving down, and estimates the
// one-sided derivative of cost at t -> 0+.
TruncationExperiment truncation_experiment(const Polyhedron& p, int v, int steps);

}  // namespace hedra
