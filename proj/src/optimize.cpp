#include "hedra/optimize.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hedra/errors.h"
#include "hedra/hull.h"
#include "hedra/truncate.h"

namespace hedra {
namespace {

constexpr double kInfeasible = 1e18;

// ---------------------------------------------------------------- utilities

// Dense Gaussian elimination with partial pivoting; A is n x n row-major.
std::vector<double> solve_dense(std::vector<double> A, std::vector<double> b, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) < 1e-14) throw NumericalFailure("singular linear system");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double m = A[r * n + col] / A[col * n + col];
            if (m == 0.0) continue;
            for (int c = col; c < n; ++c) A[r * n + c] -= m * A[col * n + c];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * x[c];
        x[r] = s / A[r * n + r];
    }
    return x;
}

bool solve3(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& rhs, Vec3& out) {
    double det = dot(a0, cross(a1, a2));
    if (std::abs(det) < 1e-10) return false;
    out = (cross(a1, a2) * rhs.x + cross(a2, a0) * rhs.y + cross(a0, a1) * rhs.z) / det;
    return true;
}

}  // namespace

// ------------------------------------------------------------ lindelof_check

LindelofReport lindelof_check(const Polyhedron& p) {
    Insphere sph = insphere(p);  // validates and requires convexity
    LindelofReport rep;
    rep.insphere = sph;
    rep.faces.reserve(p.faces.size());
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        PlaneFit fit = face_plane(p, f);
        const Vec3& n = fit.plane.normal;
        double dist = fit.plane.offset - dot(n, sph.center);
        FaceTangency ft;
        ft.tangency = sph.center + n * dist;
        ft.centroid = face_centroid(p, f);
        ft.residual = norm(ft.tangency - ft.centroid);
        ft.deficit = std::abs(dist - sph.radius);
        rep.max_residual = std::max(rep.max_residual, ft.residual);
        rep.max_deficit = std::max(rep.max_deficit, ft.deficit);
        rep.faces.push_back(ft);
    }
    return rep;
}

// ------------------------------------------------------------- TypeEmbedding

namespace {

std::vector<std::vector<int>> incident_faces_of(const CombinatorialType& t, int nv) {
    std::vector<std::vector<int>> inc(nv);
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f)
        for (int v : t.faces[f]) inc[v].push_back(f);
    return inc;
}

int label_count(const CombinatorialType& t) {
    int nv = 0;
    for (const auto& f : t.faces)
        for (int v : f) nv = std::max(nv, v + 1);
    return nv;
}

// Vertex positions from face planes. Returns false (without throwing) when a
// plane triple is too parallel to intersect cleanly. For vertices of degree
// above three, positions are least-squares and the worst plane disagreement
// is accumulated into *agreement.
bool derive_vertices(const std::vector<std::vector<int>>& incident,
                     const std::vector<Vec3>& normals, const std::vector<double>& offsets,
                     std::vector<Vec3>& out, double* agreement) {
    const int nv = static_cast<int>(incident.size());
    out.resize(nv);
    if (agreement) *agreement = 0.0;
    for (int v = 0; v < nv; ++v) {
        const auto& inc = incident[v];
        if (inc.size() < 3) return false;
        if (inc.size() == 3) {
            if (!solve3(normals[inc[0]], normals[inc[1]], normals[inc[2]],
                        {offsets[inc[0]], offsets[inc[1]], offsets[inc[2]]}, out[v]))
                return false;
        } else {
            double AtA[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
            Vec3 Atb{0, 0, 0};
            for (int f : inc) {
                const Vec3& n = normals[f];
                AtA[0] += n.x * n.x;
                AtA[1] += n.x * n.y;
                AtA[2] += n.x * n.z;
                AtA[4] += n.y * n.y;
                AtA[5] += n.y * n.z;
                AtA[8] += n.z * n.z;
                Atb += n * offsets[f];
            }
            AtA[3] = AtA[1];
            AtA[6] = AtA[2];
            AtA[7] = AtA[5];
            if (!solve3({AtA[0], AtA[1], AtA[2]}, {AtA[3], AtA[4], AtA[5]},
                        {AtA[6], AtA[7], AtA[8]}, Atb, out[v]))
                return false;
            if (agreement)
                for (int f : inc)
                    *agreement =
                        std::max(*agreement, std::abs(dot(normals[f], out[v]) - offsets[f]));
        }
    }
    return true;
}

}  // namespace

Polyhedron TypeEmbedding::realize(double agreement_tol) const {
    require_valid_type(type);
    if (planes.size() != type.faces.size())
        throw OutOfRange("TypeEmbedding: one plane per face required");
    const int nv = label_count(type);
    auto incident = incident_faces_of(type, nv);
    std::vector<Vec3> normals(planes.size());
    std::vector<double> offsets(planes.size());
    for (std::size_t f = 0; f < planes.size(); ++f) {
        normals[f] = normalized(planes[f].normal);
        if (norm(normals[f]) == 0.0) throw OutOfRange("TypeEmbedding: zero normal");
        offsets[f] = planes[f].offset / norm(planes[f].normal);
    }
    Polyhedron p;
    p.faces = type.faces;
    double agreement = 0.0;
    if (!derive_vertices(incident, normals, offsets, p.vertices, &agreement))
        throw NumericalFailure("TypeEmbedding: incident planes do not meet at a point");
    double diam = diameter(p);
    if (agreement > agreement_tol * diam)
        throw NumericalFailure("TypeEmbedding: planes at a high-degree vertex disagree");
    require_valid(p);
    return p;
}

TypeEmbedding embedding_of(const Polyhedron& p) {
    require_valid(p);
    TypeEmbedding e;
    e.type = combinatorial_type(p);
    e.planes.reserve(p.faces.size());
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f)
        e.planes.push_back(face_plane(p, f).plane);
    return e;
}

// ------------------------------------------------------------ seed_embedding

namespace {

// Planar spring drawing of a simplicial type: the face `outer` is pinned to
// an equilateral triangle, every other vertex is placed at the average of
// its neighbors (the linear system of a 3-connected planar graph has a
// unique solution with all interior faces convex and non-overlapping).
std::vector<Vec3> spring_drawing(const CombinatorialType& d, int nv, int outer) {
    std::vector<std::set<int>> nbr(nv);
    for (const auto& f : d.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            nbr[f[i]].insert(f[(i + 1) % k]);
            nbr[f[i]].insert(f[(i + k - 1) % k]);
        }
    }
    std::vector<int> pin(nv, -1);
    const auto& of = d.faces[outer];
    for (int i = 0; i < 3; ++i) pin[of[i]] = i;
    const double ang0 = M_PI / 2.0;
    const Vec3 corners[3] = {{std::cos(ang0), std::sin(ang0), 0},
                             {std::cos(ang0 + 2 * M_PI / 3), std::sin(ang0 + 2 * M_PI / 3), 0},
                             {std::cos(ang0 + 4 * M_PI / 3), std::sin(ang0 + 4 * M_PI / 3), 0}};

    std::vector<int> unknown_of(nv, -1);
    std::vector<int> vertex_of;
    for (int v = 0; v < nv; ++v)
        if (pin[v] < 0) {
            unknown_of[v] = static_cast<int>(vertex_of.size());
            vertex_of.push_back(v);
        }
    const int m = static_cast<int>(vertex_of.size());
    std::vector<Vec3> pos(nv);
    for (int v = 0; v < nv; ++v)
        if (pin[v] >= 0) pos[v] = corners[pin[v]];
    if (m > 0) {
        std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0), bx(m, 0.0), by(m, 0.0);
        for (int r = 0; r < m; ++r) {
            int v = vertex_of[r];
            A[static_cast<std::size_t>(r) * m + r] = static_cast<double>(nbr[v].size());
            for (int w : nbr[v]) {
                if (pin[w] >= 0) {
                    bx[r] += corners[pin[w]].x;
                    by[r] += corners[pin[w]].y;
                } else {
                    A[static_cast<std::size_t>(r) * m + unknown_of[w]] -= 1.0;
                }
            }
        }
        auto xs = solve_dense(A, bx, m);
        auto ys = solve_dense(std::move(A), by, m);
        for (int r = 0; r < m; ++r) pos[vertex_of[r]] = {xs[r], ys[r], 0.0};
    }
    return pos;
}

double drawing_signed_area(const std::vector<Vec3>& pos, const std::vector<int>& f) {
    double s = 0.0;
    const int k = static_cast<int>(f.size());
    for (int i = 0; i < k; ++i) {
        const Vec3& a = pos[f[i]];
        const Vec3& b = pos[f[(i + 1) % k]];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

// Lifts the drawing to heights via the equilibrium-stress correspondence
// with unit stress on every interior edge: an arbitrary interior face is
// anchored at height zero, affine height maps propagate across interior
// edges (consistency around interior vertices is exactly the spring
// equilibrium), and finally the affine map through the three outer vertices
// is subtracted so the outer face lands exactly in the base plane. Returns
// per-vertex heights or nullopt when propagation is inconsistent.
std::optional<std::vector<double>> lift_heights(const CombinatorialType& d,
                                                const std::vector<Vec3>& pos, int nv, int outer,
                                                double sign) {
    const int nf = static_cast<int>(d.faces.size());
    std::map<std::pair<int, int>, int> owner;
    std::set<std::pair<int, int>> boundary;  // undirected edges of the outer face
    for (int f = 0; f < nf; ++f) {
        const auto& c = d.faces[f];
        const int k = static_cast<int>(c.size());
        for (int i = 0; i < k; ++i) {
            int u = c[i], v = c[(i + 1) % k];
            owner[{u, v}] = f;
            if (f == outer) boundary.insert({std::min(u, v), std::max(u, v)});
        }
    }
    std::vector<Vec3> grad(nf, {0, 0, 0});  // z components unused
    std::vector<double> off(nf, 0.0);
    std::vector<char> seen(nf, 0);
    int anchor = outer == 0 ? 1 : 0;
    seen[anchor] = 1;
    std::queue<int> bfs;
    bfs.push(anchor);
    while (!bfs.empty()) {
        int f = bfs.front();
        bfs.pop();
        const auto& c = d.faces[f];
        const int k = static_cast<int>(c.size());
        for (int i = 0; i < k; ++i) {
            int u = c[i], v = c[(i + 1) % k];
            if (boundary.count({std::min(u, v), std::max(u, v)})) continue;
            int g = owner.at({v, u});
            if (seen[g] || g == outer) continue;
            Vec3 e = pos[v] - pos[u];
            Vec3 rot{-e.y, e.x, 0.0};  // edge vector turned a quarter left
            grad[g] = grad[f] + rot * sign;
            off[g] = off[f] + dot(grad[f] - grad[g], pos[u]);
            seen[g] = 1;
            bfs.push(g);
        }
    }
    for (int f = 0; f < nf; ++f)
        if (f != outer && !seen[f]) return std::nullopt;

    double spread = 0.0;
    for (int v = 0; v < nv; ++v) spread = std::max(spread, norm(pos[v]));
    std::vector<double> z(nv, 0.0);
    std::vector<char> zset(nv, 0);
    double worst = 0.0;
    for (int f = 0; f < nf; ++f) {
        if (f == outer) continue;
        for (int v : d.faces[f]) {
            double h = dot(grad[f], pos[v]) + off[f];
            if (!zset[v]) {
                z[v] = h;
                zset[v] = 1;
            } else {
                worst = std::max(worst, std::abs(h - z[v]));
            }
        }
    }
    if (worst > 1e-7 * std::max(1.0, spread)) return std::nullopt;

    // subtract the affine map through the outer face's three vertices
    const auto& of = d.faces[outer];
    if (of.size() != 3) return std::nullopt;
    Vec3 rows[3];
    Vec3 rhs{z[of[0]], z[of[1]], z[of[2]]};
    for (int i = 0; i < 3; ++i) rows[i] = {pos[of[i]].x, pos[of[i]].y, 1.0};
    Vec3 abc;
    if (!solve3(rows[0], rows[1], rows[2], rhs, abc)) return std::nullopt;
    for (int v = 0; v < nv; ++v) z[v] -= abc.x * pos[v].x + abc.y * pos[v].y + abc.z;
    for (int v : of) z[v] = 0.0;  // exact, not just numerically close
    return z;
}

bool cycles_equal_up_to_rotation(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return false;
    const int k = static_cast<int>(a.size());
    for (int s = 0; s < k; ++s) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) ok = a[i] == b[(s + i) % k];
        if (ok) return true;
    }
    return false;
}

}  // namespace

TypeEmbedding seed_embedding(const CombinatorialType& t) {
    require_valid_type(t);
    const int nv_t = label_count(t);
    auto incident = incident_faces_of(t, nv_t);
    for (const auto& inc : incident)
        if (inc.size() != 3)
            throw OutOfRange("seed_embedding: every vertex must have degree 3");

    CombinatorialType d = dual_type(t);  // simplicial: all faces triangles
    const int nv_d = static_cast<int>(t.faces.size());
    const int outer = 0;

    auto pos = spring_drawing(d, nv_d, outer);
    // orient every face counterclockwise in the drawing except the outer one
    double interior_area = 0.0;
    for (int f = 0; f < static_cast<int>(d.faces.size()); ++f)
        if (f != outer) interior_area += drawing_signed_area(pos, d.faces[f]);
    if (interior_area < 0.0)
        for (auto& f : d.faces) std::reverse(f.begin(), f.end());

    std::optional<std::vector<double>> z = lift_heights(d, pos, nv_d, outer, +1.0);
    if (!z) z = lift_heights(d, pos, nv_d, outer, -1.0);
    if (!z) throw NumericalFailure("seed_embedding: lift is inconsistent");

    Polyhedron q;
    q.vertices.resize(nv_d);
    for (int v = 0; v < nv_d; ++v) q.vertices[v] = {pos[v].x, pos[v].y, (*z)[v]};
    q.faces = d.faces;
    q = oriented_positive(std::move(q));
    require_valid(q);
    if (!is_convex(q, 1e-7)) throw NumericalFailure("seed_embedding: lift is not convex");

    Vec3 c = vertex_centroid(q);
    for (auto& v : q.vertices) v -= c;
    Polyhedron r = polar_dual(q);

    if (canonical_code(combinatorial_type(r)) != canonical_code(t))
        throw NumericalFailure("seed_embedding: realization does not match the type");

    TypeEmbedding e;
    e.type = t;
    e.planes.reserve(r.faces.size());
    for (int f = 0; f < static_cast<int>(r.faces.size()); ++f)
        e.planes.push_back(face_plane(r, f).plane);

    // r's face f corresponds to t's face f by construction, but the whole
    // realization may be the mirror image; detect by comparing one face
    // cycle and fix with a central inversion.
    if (!cycles_equal_up_to_rotation(r.faces[0], t.faces[0])) {
        std::vector<int> rev = r.faces[0];
        std::reverse(rev.begin(), rev.end());
        if (!cycles_equal_up_to_rotation(rev, t.faces[0]))
            throw NumericalFailure("seed_embedding: face correspondence lost");
        for (auto& pl : e.planes) pl.normal = -pl.normal;
    }
    e.realize();  // validates
    return e;
}

// -------------------------------------------------------------- SymmetryGroup

SymmetryGroup SymmetryGroup::from_generators(const std::vector<Mat3>& gens) {
    auto same = [](const Mat3& a, const Mat3& b) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (std::abs(a(i, j) - b(i, j)) > 1e-9) return false;
        return true;
    };
    SymmetryGroup g;
    g.elements.push_back(Mat3::identity());
    std::size_t head = 0;
    while (head < g.elements.size()) {
        Mat3 base = g.elements[head++];
        for (const Mat3& gen : gens) {
            Mat3 next = gen * base;
            bool known = false;
            for (const Mat3& e : g.elements)
                if (same(e, next)) {
                    known = true;
                    break;
                }
            if (!known) {
                if (g.elements.size() >= 200)
                    throw OptimizerFailure("symmetry group closure exceeds 200 elements");
                g.elements.push_back(next);
            }
        }
    }
    return g;
}

// -------------------------------------------------------- minimize_within_type

namespace {

struct EvalScratch {
    std::vector<Vec3> normals;
    std::vector<double> offsets;
    std::vector<Vec3> verts;
};

struct EvalOutcome {
    double cost = kInfeasible;
    bool feasible = false;
    bool edge_collapse = false;
    double unit_area = 0.0;
    double agreement = 0.0;  // worst plane disagreement at degree > 3 vertices
    double diag = 0.0;       // bounding-box diagonal of the derived vertices
};

struct Objective {
    const CombinatorialType* type = nullptr;
    std::vector<std::vector<int>> incident;
    std::vector<std::pair<int, int>> edge_list;
    int nv = 0;
    int nfaces = 0;

    void init(const CombinatorialType& t) {
        type = &t;
        nv = label_count(t);
        nfaces = static_cast<int>(t.faces.size());
        incident = incident_faces_of(t, nv);
        std::set<std::pair<int, int>> es;
        for (const auto& f : t.faces) {
            const int k = static_cast<int>(f.size());
            for (int i = 0; i < k; ++i) {
                int a = f[i], b = f[(i + 1) % k];
                es.insert({std::min(a, b), std::max(a, b)});
            }
        }
        edge_list.assign(es.begin(), es.end());
    }

    // params layout: [n0.x n0.y n0.z d0 | n1.x ...], length 4 * nfaces
    EvalOutcome eval(const std::vector<double>& params, EvalScratch& s) const {
        EvalOutcome out;
        s.normals.resize(nfaces);
        s.offsets.resize(nfaces);
        for (int f = 0; f < nfaces; ++f) {
            Vec3 n{params[4 * f], params[4 * f + 1], params[4 * f + 2]};
            double len = norm(n);
            if (len < 1e-9) return out;
            s.normals[f] = n / len;
            s.offsets[f] = params[4 * f + 3] / len;
        }
        double agreement = 0.0;
        if (!derive_vertices(incident, s.normals, s.offsets, s.verts, &agreement)) return out;

        // bounding-box diagonal as the length scale
        Vec3 lo = s.verts[0], hi = s.verts[0];
        for (const Vec3& v : s.verts) {
            lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
            hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
        }
        double diag = norm(hi - lo);
        if (!(diag > 0.0) || !std::isfinite(diag)) return out;

        // convex position: every vertex weakly inside every face plane
        for (int f = 0; f < nfaces; ++f)
            for (const Vec3& v : s.verts)
                if (dot(s.normals[f], v) > s.offsets[f] + 1e-7 * diag) return out;

        double min_edge = std::numeric_limits<double>::infinity();
        for (auto [a, b] : edge_list) min_edge = std::min(min_edge, norm(s.verts[a] - s.verts[b]));

        double area = 0.0, vol = 0.0;
        for (int f = 0; f < nfaces; ++f) {
            const auto& cyc = type->faces[f];
            const int k = static_cast<int>(cyc.size());
            Vec3 va{0, 0, 0};
            for (int i = 0; i < k; ++i) va += cross(s.verts[cyc[i]], s.verts[cyc[(i + 1) % k]]);
            va = va * 0.5;
            double fa = norm(va);
            // orientation guard: derived face must agree with its plane
            if (fa <= 0.0 || dot(va / fa, s.normals[f]) < 0.9) return out;
            area += fa;
            vol += dot(va, s.verts[cyc[0]]) / 3.0;
        }
        if (!(vol > 1e-12 * diag * diag * diag)) return out;

        // At degree > 3 vertices the least-squares position makes the mesh a
        // genuine polyhedron for any plane values, so the cost stays smooth;
        // plane concurrence is demanded at convergence time, not penalized here.
        out.agreement = agreement;
        out.diag = diag;
        out.cost = area * area * area / (vol * vol);
        out.unit_area = std::cbrt(out.cost);
        if (min_edge < 1e-7 * diag) {
            out.edge_collapse = true;
            return out;  // infeasible, but the collapse is recorded
        }
        out.feasible = true;
        return out;
    }
};

struct FacePermutations {
    std::vector<std::vector<int>> sigma;  // per group element: f -> matched face
};

// Matches each group element to the face permutation it induces on the seed
// planes (the seed must already be symmetric about the origin).
FacePermutations match_group(const SymmetryGroup& g, const std::vector<Vec3>& normals,
                             const std::vector<double>& offsets) {
    const int nf = static_cast<int>(normals.size());
    double dscale = 1.0;
    for (double d : offsets) dscale = std::max(dscale, std::abs(d));
    FacePermutations fp;
    for (const Mat3& el : g.elements) {
        std::vector<int> sig(nf, -1);
        std::vector<char> used(nf, 0);
        for (int f = 0; f < nf; ++f) {
            Vec3 tn = el * normals[f];
            int best = -1;
            double best_score = -2.0;
            for (int j = 0; j < nf; ++j) {
                if (used[j]) continue;
                double score = dot(tn, normals[j]) - std::abs(offsets[f] - offsets[j]) / dscale;
                if (score > best_score) {
                    best_score = score;
                    best = j;
                }
            }
            if (best < 0 || dot(tn, normals[best]) < 1.0 - 1e-6 ||
                std::abs(offsets[f] - offsets[best]) > 1e-6 * dscale)
                throw OptimizerFailure(
                    "symmetry group does not act on the seed embedding's face planes");
            sig[f] = best;
            used[best] = 1;
        }
        fp.sigma.push_back(std::move(sig));
    }
    return fp;
}

struct Projector {
    const Objective* obj = nullptr;
    const SymmetryGroup* group = nullptr;
    const FacePermutations* perms = nullptr;

    // Averages the planes over the symmetry group (exact projection onto the
    // invariant subspace when the permutations are right).
    void symmetrize(std::vector<double>& params) const {
        if (!group) return;
        const int nf = obj->nfaces;
        for (int f = 0; f < nf; ++f) {
            Vec3 n{params[4 * f], params[4 * f + 1], params[4 * f + 2]};
            if (norm(n) < 1e-9) return;  // degenerate state; leave untouched
        }
        std::vector<Vec3> acc_n(nf, {0, 0, 0});
        std::vector<double> acc_d(nf, 0.0);
        for (std::size_t gi = 0; gi < group->elements.size(); ++gi) {
            Mat3 ginv = group->elements[gi].transposed();
            const auto& sig = perms->sigma[gi];
            for (int f = 0; f < nf; ++f) {
                int j = sig[f];
                Vec3 nj{params[4 * j], params[4 * j + 1], params[4 * j + 2]};
                acc_n[f] += ginv * normalized(nj);
                acc_d[f] += params[4 * j + 3] / norm(nj);
            }
        }
        const double inv = 1.0 / static_cast<double>(group->elements.size());
        for (int f = 0; f < nf; ++f) {
            Vec3 n = acc_n[f] * inv;
            if (norm(n) < 0.5) return;  // perturbation too wild; skip averaging
        }
        for (int f = 0; f < nf; ++f) {
            Vec3 n = normalized(acc_n[f] * inv);
            params[4 * f] = n.x;
            params[4 * f + 1] = n.y;
            params[4 * f + 2] = n.z;
            params[4 * f + 3] = acc_d[f] * inv;
        }
    }

    // Renormalizes, recenters the insphere at the origin, and rescales to
    // unit volume. Needs a feasible state; quietly does less when not.
    void gauge(std::vector<double>& params, EvalScratch& s) const {
        const int nf = obj->nfaces;
        for (int f = 0; f < nf; ++f) {
            Vec3 n{params[4 * f], params[4 * f + 1], params[4 * f + 2]};
            double len = norm(n);
            if (len < 1e-9) return;
            params[4 * f] = n.x / len;
            params[4 * f + 1] = n.y / len;
            params[4 * f + 2] = n.z / len;
            params[4 * f + 3] /= len;
        }
        EvalOutcome e = obj->eval(params, s);
        if (!e.feasible) return;
        Vec3 centroid{0, 0, 0};
        for (const Vec3& v : s.verts) centroid += v;
        centroid = centroid / static_cast<double>(obj->nv);
        Vec3 center = centroid;
        try {
            std::vector<Plane> pls(nf);
            for (int f = 0; f < nf; ++f)
                pls[f] = {s.normals[f], s.offsets[f]};
            center = chebyshev_center(pls, centroid).center;
        } catch (const Error&) {
            center = centroid;
        }
        double vol = 0.0;
        for (int f = 0; f < nf; ++f) {
            const auto& cyc = obj->type->faces[f];
            const int k = static_cast<int>(cyc.size());
            Vec3 va{0, 0, 0};
            for (int i = 0; i < k; ++i) va += cross(s.verts[cyc[i]], s.verts[cyc[(i + 1) % k]]);
            vol += dot(va * 0.5, s.verts[cyc[0]] - center) / 3.0;
        }
        if (!(vol > 0.0)) return;
        double lam = std::cbrt(1.0 / vol);
        for (int f = 0; f < nf; ++f) {
            double d = params[4 * f + 3] - dot({params[4 * f], params[4 * f + 1], params[4 * f + 2]}, center);
            params[4 * f + 3] = d * lam;
        }
    }
};

enum class RestartOutcome { Converged, Stalled, MaxIterations, Broken, SeedDead };

struct RestartResult {
    RestartOutcome outcome = RestartOutcome::SeedDead;
    double cost = kInfeasible;
    double unit_area = 0.0;
    double last_unit_area = 0.0;  // for Broken: area just before collapse
    double residual = std::numeric_limits<double>::infinity();
    std::vector<double> params;
    std::vector<TraceEntry> trace;
    int iterations = 0;
};

double lindelof_residual_of(const Objective& obj, const std::vector<double>& params,
                            EvalScratch& s) {
    EvalOutcome e = obj.eval(params, s);
    if (!e.feasible) return std::numeric_limits<double>::infinity();
    Polyhedron p;
    p.vertices = s.verts;
    p.faces = obj.type->faces;
    try {
        p = scale_to_unit_volume(std::move(p));
        return lindelof_check(p).max_residual;
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

RestartResult run_restart(const Objective& obj, const Projector& proj,
                          std::vector<double> params, int max_iterations, bool symmetric) {
    EvalScratch s;
    RestartResult rr;
    proj.symmetrize(params);
    proj.gauge(params, s);
    EvalOutcome cur = obj.eval(params, s);
    if (!cur.feasible) {
        rr.outcome = RestartOutcome::SeedDead;
        return rr;
    }
    rr.trace.push_back({0, cur.cost, cur.unit_area, 0.0});

    const int np = 4 * obj.nfaces;
    std::vector<double> grad(np), probe, best_step_params;
    std::vector<double> history{cur.cost};

    auto finish = [&](RestartOutcome oc) {
        rr.outcome = oc;
        rr.cost = cur.cost;
        rr.unit_area = cur.unit_area;
        rr.last_unit_area = cur.unit_area;
        rr.params = params;
        rr.iterations = static_cast<int>(history.size()) - 1;
        if (oc == RestartOutcome::Converged)
            rr.residual = lindelof_residual_of(obj, params, s);
        return rr;
    };

    // tangency acceleration: equalize all support distances, keep only when
    // the cost drops; returns whether the probe was adopted
    auto try_acceleration = [&](int iter) {
        probe = params;
        proj.gauge(probe, s);
        double mean_d = 0.0;
        for (int f = 0; f < obj.nfaces; ++f) mean_d += probe[4 * f + 3];
        mean_d /= obj.nfaces;
        for (int f = 0; f < obj.nfaces; ++f) probe[4 * f + 3] = mean_d;
        proj.symmetrize(probe);
        EvalOutcome acc = obj.eval(probe, s);
        if (acc.feasible && acc.cost < cur.cost) {
            params = probe;
            cur = acc;
            history.push_back(cur.cost);
            rr.trace.push_back({iter, cur.cost, cur.unit_area, 0.0});
            return true;
        }
        return false;
    };

    for (int iter = 1; iter <= max_iterations; ++iter) {
        if (iter % 25 == 0 && try_acceleration(iter)) continue;

        // central-difference gradient
        probe = params;
        double gnorm2 = 0.0;
        for (int i = 0; i < np; ++i) {
            double h = 1e-6 * std::max(1.0, std::abs(params[i]));
            probe[i] = params[i] + h;
            EvalOutcome up = obj.eval(probe, s);
            probe[i] = params[i] - h;
            EvalOutcome dn = obj.eval(probe, s);
            probe[i] = params[i];
            double g;
            if (up.feasible && dn.feasible)
                g = (up.cost - dn.cost) / (2 * h);
            else if (up.feasible)
                g = (up.cost - cur.cost) / h;
            else if (dn.feasible)
                g = (cur.cost - dn.cost) / h;
            else
                g = 0.0;
            grad[i] = g;
            gnorm2 += g * g;
        }
        double gnorm = std::sqrt(gnorm2);
        bool stationary = gnorm < 1e-12 * std::max(1.0, cur.cost);

        bool stepped = false;
        double accepted_step = 0.0;
        if (!stationary) {
            // fresh backtracking budget every iteration: warm-starting the
            // step size can ratchet it down to where cost changes fall below
            // double resolution and descent dies far from the minimum
            double t = 0.25;
            // progress smaller than a few ulps of the cost is noise, not descent
            const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() * cur.cost;
            for (int half = 0; half < 40 && !stepped; ++half, t *= 0.5) {
                probe = params;
                for (int i = 0; i < np; ++i) probe[i] -= (t / gnorm) * grad[i];
                EvalOutcome cand = obj.eval(probe, s);
                if (cand.feasible && cand.cost < cur.cost - std::max(1e-4 * t * gnorm, noise_floor)) {
                    // full projection, kept only when it does not cost us
                    best_step_params = probe;
                    proj.symmetrize(best_step_params);
                    proj.gauge(best_step_params, s);
                    EvalOutcome pe = obj.eval(best_step_params, s);
                    if (pe.feasible && pe.cost <= cand.cost) {
                        params = best_step_params;
                        cur = pe;
                    } else {
                        params = probe;
                        cur = cand;
                    }
                    stepped = true;
                    accepted_step = t;
                }
            }
        }

        if (stepped) {
            history.push_back(cur.cost);
            rr.trace.push_back({iter, cur.cost, cur.unit_area, accepted_step});
        } else {
            // the gradient made no progress; the tangency move sometimes still
            // does, since it cuts across the ill-conditioned valley floor
            if (try_acceleration(iter)) continue;
            // no feasible descent: either a collapse boundary or a minimum
            EvalOutcome recheck = obj.eval(params, s);
            double diag = 0.0;
            double min_edge = std::numeric_limits<double>::infinity();
            if (recheck.feasible) {
                Vec3 lo = s.verts[0], hi = s.verts[0];
                for (const Vec3& v : s.verts) {
                    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
                    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
                }
                diag = norm(hi - lo);
                for (auto [a, b] : obj.edge_list)
                    min_edge = std::min(min_edge, norm(s.verts[a] - s.verts[b]));
            }
            if (recheck.feasible && min_edge < 1e-5 * diag) {
                rr.last_unit_area = cur.unit_area;
                rr.outcome = RestartOutcome::Broken;
                rr.cost = cur.cost;
                rr.unit_area = cur.unit_area;
                rr.params = params;
                rr.iterations = static_cast<int>(history.size()) - 1;
                return rr;
            }
            double res = lindelof_residual_of(obj, params, s);
            rr.residual = res;
            bool concurrent = cur.agreement <= 1e-8 * cur.diag;
            if ((res < 1e-5 || symmetric) && concurrent)
                return finish(RestartOutcome::Converged);
            return finish(RestartOutcome::Stalled);
        }

        // convergence: relative cost change below 1e-12 across a
        // 100-iteration window, plus the tangency residual test and plane
        // concurrence at any vertex of degree above three
        const std::size_t window = 100;
        if (history.size() > window) {
            double then = history[history.size() - 1 - window];
            double now = history.back();
            if ((then - now) < 1e-12 * now) {
                double res = lindelof_residual_of(obj, params, s);
                rr.residual = res;
                bool concurrent = cur.agreement <= 1e-8 * cur.diag;
                if ((res < 1e-5 || symmetric) && concurrent)
                    return finish(RestartOutcome::Converged);
                return finish(RestartOutcome::Stalled);
            }
        }
    }
    return finish(RestartOutcome::MaxIterations);
}

}  // namespace

OptimizeResult minimize_within_type(const CombinatorialType& t, const TypeEmbedding& seed,
                                    const SymmetryGroup* symmetry,
                                    const MinimizeOptions& options) {
    require_valid_type(t);
    if (canonical_code(combinatorial_type(seed.realize())) != canonical_code(t))
        throw OutOfRange("minimize_within_type: seed does not realize the type");

    Objective obj;
    obj.init(t);

    // base parameters from the seed, gauge-fixed so symmetry matching sees a
    // centered embedding
    std::vector<double> base(4 * obj.nfaces);
    for (int f = 0; f < obj.nfaces; ++f) {
        Vec3 n = normalized(seed.planes[f].normal);
        base[4 * f] = n.x;
        base[4 * f + 1] = n.y;
        base[4 * f + 2] = n.z;
        base[4 * f + 3] = seed.planes[f].offset / norm(seed.planes[f].normal);
    }
    Projector centering{&obj, nullptr, nullptr};
    EvalScratch s;
    centering.gauge(base, s);

    FacePermutations perms;
    Projector proj{&obj, nullptr, nullptr};
    if (symmetry) {
        std::vector<Vec3> normals(obj.nfaces);
        std::vector<double> offsets(obj.nfaces);
        for (int f = 0; f < obj.nfaces; ++f) {
            normals[f] = {base[4 * f], base[4 * f + 1], base[4 * f + 2]};
            offsets[f] = base[4 * f + 3];
        }
        perms = match_group(*symmetry, normals, offsets);
        proj.group = symmetry;
        proj.perms = &perms;
    }

    int first = 0, last = options.restarts - 1;
    if (options.seed_index >= 0) first = last = options.seed_index;

    std::vector<RestartResult> results;
    for (int k = first; k <= last; ++k) {
        double scale = options.perturbation;
        RestartResult rr;
        for (int attempt = 0; attempt < 7; ++attempt) {
            std::vector<double> start = base;
            if (k > 0) {
                std::mt19937 rng(1234 + 7919 * static_cast<unsigned>(k));
                std::normal_distribution<double> gauss(0.0, 1.0);
                for (double& x : start) x += scale * gauss(rng);
            }
            rr = run_restart(obj, proj, std::move(start), options.max_iterations,
                             symmetry != nullptr);
            if (rr.outcome != RestartOutcome::SeedDead || k == 0) break;
            scale *= 0.5;
        }
        results.push_back(std::move(rr));
    }

    const RestartResult* best = nullptr;
    int best_seed = -1;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& rr = results[i];
        if (rr.outcome != RestartOutcome::Converged) continue;
        if (!best || rr.cost < best->cost) {
            best = &rr;
            best_seed = first + static_cast<int>(i);
        }
    }
    if (!best) {
        double best_broken = std::numeric_limits<double>::infinity();
        bool any_broken = false;
        for (const auto& rr : results)
            if (rr.outcome == RestartOutcome::Broken) {
                any_broken = true;
                best_broken = std::min(best_broken, rr.last_unit_area);
            }
        if (any_broken)
            throw CombinatoricsBroken(
                "every restart collapsed an edge: the minimum within this type lies on a "
                "degeneration boundary (best unit area before collapse " +
                    std::to_string(best_broken) + ")",
                best_broken);
        double best_area = std::numeric_limits<double>::infinity();
        for (const auto& rr : results)
            if (rr.outcome == RestartOutcome::Stalled || rr.outcome == RestartOutcome::MaxIterations)
                best_area = std::min(best_area, rr.unit_area);
        throw NoConvergence("no restart met the convergence criterion (best unit area " +
                            std::to_string(best_area) + ")");
    }

    TypeEmbedding out_emb;
    out_emb.type = t;
    out_emb.planes.resize(obj.nfaces);
    for (int f = 0; f < obj.nfaces; ++f) {
        Vec3 n{best->params[4 * f], best->params[4 * f + 1], best->params[4 * f + 2]};
        double len = norm(n);
        out_emb.planes[f] = {n / len, best->params[4 * f + 3] / len};
    }
    OptimizeResult res;
    // Convergence bounded the plane disagreement by 1e-8 x the bounding-box
    // diagonal; realize() measures against the vertex-pair diameter, which can
    // be smaller by up to sqrt(3), so allow that factor here.
    res.shape = scale_to_unit_volume(out_emb.realize(2e-8));
    res.unit_area = measures(res.shape).surface_area;
    res.lindelof_residual = best->residual;
    res.winning_seed = best_seed;
    res.iterations = best->iterations;
    res.trace = best->trace;
    return res;
}

// ------------------------------------------------------ truncation_experiment

TruncationExperiment truncation_experiment(const Polyhedron& p, int v, int steps) {
    if (steps < 1) throw OutOfRange("truncation_experiment: steps must be positive");
    require_valid(p);
    if (v < 0 || v >= static_cast<int>(p.vertices.size()))
        throw OutOfRange("truncation_experiment: vertex index out of range");

    // the same cut direction truncate_vertex uses: mean of the edge rays
    Vec3 u{0, 0, 0};
    for (const auto& f : p.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i)
            if (f[i] == v) {
                Vec3 e = p.vertices[f[(i + 1) % k]] - p.vertices[v];
                u += normalized(e);
            }
    }
    u = normalized(u);
    if (norm(u) == 0.0) throw NonConvexVertex("truncation_experiment: flat vertex");
    double t_max = std::numeric_limits<double>::infinity();
    for (int w = 0; w < static_cast<int>(p.vertices.size()); ++w)
        if (w != v) t_max = std::min(t_max, dot(u, p.vertices[w] - p.vertices[v]));

    TruncationExperiment out;
    out.untruncated_cost = measures(p).cost;
    double t = std::min(t_max / steps, 0.9 * t_max);
    for (int j = 0; j < steps; ++j, t *= 0.5) {
        Polyhedron cut = truncate_vertex(p, v, t);
        out.samples.emplace_back(t, measures(cut).cost);
    }
    const auto& [t_small, cost_small] = out.samples.back();
    out.derivative_at_zero = (cost_small - out.untruncated_cost) / t_small;
    return out;
}

}  // namespace hedra
