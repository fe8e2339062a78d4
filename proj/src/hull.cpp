#include "hedra/hull.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "hedra/errors.h"

namespace hedra {

namespace {

struct Tri {
    int v[3];
    Vec3 n;       // unit normal
    double d;     // plane offset
    bool alive = true;
};

Vec3 tri_normal(const std::vector<Vec3>& pts, int a, int b, int c) {
    return cross(pts[b] - pts[a], pts[c] - pts[a]);
}

double spread(const std::vector<Vec3>& pts) {
    Vec3 lo = pts[0], hi = pts[0];
    for (const Vec3& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

// Incremental hull over triangles. Points are inserted farthest-first; a
// point within `on_tol` of a supporting plane counts as on it, so coplanar
// hull vertices (cube corners and the like) are retained for the merge pass.
class TriHull {
  public:
    TriHull(const std::vector<Vec3>& pts, double on_tol) : pts_(pts), on_tol_(on_tol) {}

    void build() {
        init_simplex();
        std::vector<char> done(pts_.size(), 0);
        for (int v : initial_) done[v] = 1;
        while (true) {
            // Farthest remaining point outside the current hull.
            int best = -1;
            double best_dist = on_tol_;
            for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
                if (done[i]) continue;
                double d = -std::numeric_limits<double>::infinity();
                for (const Tri& t : tris_)
                    if (t.alive) d = std::max(d, dot(t.n, pts_[i]) - t.d);
                if (d <= on_tol_) {
                    done[i] = 1;  // interior, never needed again
                    continue;
                }
                if (d > best_dist) {
                    best_dist = d;
                    best = i;
                }
            }
            if (best < 0) break;
            insert(best);
            done[best] = 1;
        }
    }

    std::vector<Tri> triangles() const {
        std::vector<Tri> out;
        for (const Tri& t : tris_)
            if (t.alive) out.push_back(t);
        return out;
    }

  private:
    void init_simplex() {
        const int n = static_cast<int>(pts_.size());
        // Farthest pair among the six axis extremes.
        int ext[6] = {0, 0, 0, 0, 0, 0};
        for (int i = 0; i < n; ++i) {
            if (pts_[i].x < pts_[ext[0]].x) ext[0] = i;
            if (pts_[i].x > pts_[ext[1]].x) ext[1] = i;
            if (pts_[i].y < pts_[ext[2]].y) ext[2] = i;
            if (pts_[i].y > pts_[ext[3]].y) ext[3] = i;
            if (pts_[i].z < pts_[ext[4]].z) ext[4] = i;
            if (pts_[i].z > pts_[ext[5]].z) ext[5] = i;
        }
        int a = ext[0], b = ext[1];
        double best = -1.0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                double d = norm2(pts_[ext[i]] - pts_[ext[j]]);
                if (d > best) {
                    best = d;
                    a = ext[i];
                    b = ext[j];
                }
            }
        if (best <= on_tol_ * on_tol_) throw DegenerateInput("convex_hull: points coincide");

        int c = -1;
        best = -1.0;
        Vec3 ab = pts_[b] - pts_[a];
        for (int i = 0; i < n; ++i) {
            double d = norm2(cross(ab, pts_[i] - pts_[a]));
            if (d > best) {
                best = d;
                c = i;
            }
        }
        if (std::sqrt(best) / norm(ab) <= on_tol_)
            throw DegenerateInput("convex_hull: points are collinear");

        int dd = -1;
        best = 0.0;
        Vec3 nrm = normalized(tri_normal(pts_, a, b, c));
        for (int i = 0; i < n; ++i) {
            double dist = std::fabs(dot(nrm, pts_[i] - pts_[a]));
            if (dist > best) {
                best = dist;
                dd = i;
            }
        }
        if (best <= on_tol_) throw DegenerateInput("convex_hull: points are coplanar");

        if (dot(nrm, pts_[dd] - pts_[a]) > 0.0) std::swap(b, c);
        add_tri(a, b, c);
        add_tri(a, c, dd);
        add_tri(c, b, dd);
        add_tri(b, a, dd);
        initial_ = {a, b, c, dd};
    }

    void add_tri(int a, int b, int c) {
        Tri t;
        t.v[0] = a; t.v[1] = b; t.v[2] = c;
        t.n = normalized(tri_normal(pts_, a, b, c));
        t.d = dot(t.n, pts_[a]);
        tris_.push_back(t);
    }

    void insert(int q) {
        // Visible faces, including tangent ones so coplanar vertices attach.
        std::vector<int> visible;
        for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
            if (!tris_[i].alive) continue;
            if (dot(tris_[i].n, pts_[q]) - tris_[i].d > -on_tol_) visible.push_back(i);
        }
        // Horizon: directed edges of visible faces whose twin face survives.
        std::set<std::pair<int, int>> vis_edges;
        for (int i : visible) {
            const Tri& t = tris_[i];
            for (int k = 0; k < 3; ++k) vis_edges.insert({t.v[k], t.v[(k + 1) % 3]});
        }
        std::vector<std::pair<int, int>> horizon;
        for (const auto& e : vis_edges)
            if (!vis_edges.count({e.second, e.first})) horizon.push_back(e);
        if (horizon.empty()) return;  // fully interior after all
        for (int i : visible) tris_[i].alive = false;
        for (const auto& [a, b] : horizon) add_tri(a, b, q);
    }

    const std::vector<Vec3>& pts_;
    double on_tol_;
    std::vector<Tri> tris_;
    std::vector<int> initial_;
};

PlaneFit fit_plane_over(const std::vector<Vec3>& pts, const std::vector<int>& idx,
                        const Vec3& orient_hint) {
    Polyhedron tmp;
    tmp.vertices = pts;
    std::vector<int> cycle(idx.begin(), idx.end());
    tmp.faces.push_back(cycle);
    PlaneFit fit;
    {
        // face_plane assumes an oriented cycle; for a bag of points only the
        // covariance matters, so call through a local copy.
        Vec3 c{0, 0, 0};
        for (int i : cycle) c += pts[i];
        c = c / static_cast<double>(cycle.size());
        Mat3 cov = Mat3::diag(0, 0, 0);
        for (int i : cycle) {
            Vec3 d = pts[i] - c;
            cov(0, 0) += d.x * d.x; cov(0, 1) += d.x * d.y; cov(0, 2) += d.x * d.z;
            cov(1, 0) += d.y * d.x; cov(1, 1) += d.y * d.y; cov(1, 2) += d.y * d.z;
            cov(2, 0) += d.z * d.x; cov(2, 1) += d.z * d.y; cov(2, 2) += d.z * d.z;
        }
        Vec3 n = sym_eigen3(cov).vectors[0];
        if (dot(n, orient_hint) < 0.0) n = -n;
        fit.plane.normal = n;
        fit.plane.offset = dot(n, c);
        for (int i : cycle)
            fit.max_deviation =
                std::max(fit.max_deviation, std::fabs(dot(n, pts[i]) - fit.plane.offset));
    }
    return fit;
}

}  // namespace

Polyhedron convex_hull(const std::vector<Vec3>& points) {
    if (points.size() < 4) throw DegenerateInput("convex_hull: need at least 4 points");
    const double scale = spread(points);
    if (!(scale > 0.0)) throw DegenerateInput("convex_hull: points coincide");
    const double on_tol = 1e-9 * scale;

    TriHull hull(points, on_tol);
    hull.build();
    std::vector<Tri> tris = hull.triangles();

    // Merge adjacent coplanar triangles into patches by region growing; the
    // merge tolerance sits well below the validation planarity tolerance so
    // merged faces stay planar under the least-squares test.
    const double merge_tol = 1e-10 * scale;
    const int nt = static_cast<int>(tris.size());
    std::map<std::pair<int, int>, int> edge_owner;
    for (int i = 0; i < nt; ++i)
        for (int k = 0; k < 3; ++k) edge_owner[{tris[i].v[k], tris[i].v[(k + 1) % 3]}] = i;

    std::vector<int> patch_of(nt, -1);
    std::vector<std::vector<int>> patches;
    for (int s = 0; s < nt; ++s) {
        if (patch_of[s] >= 0) continue;
        int pid = static_cast<int>(patches.size());
        patches.push_back({s});
        patch_of[s] = pid;
        std::set<int> patch_verts(tris[s].v, tris[s].v + 3);
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            for (int k = 0; k < 3; ++k) {
                auto it = edge_owner.find({tris[i].v[(k + 1) % 3], tris[i].v[k]});
                if (it == edge_owner.end()) continue;
                int j = it->second;
                if (patch_of[j] >= 0) continue;
                if (dot(tris[j].n, tris[s].n) < 0.99) continue;
                std::vector<int> trial(patch_verts.begin(), patch_verts.end());
                for (int v : tris[j].v)
                    if (!patch_verts.count(v)) trial.push_back(v);
                PlaneFit fit = fit_plane_over(points, trial, tris[s].n);
                if (fit.max_deviation > merge_tol) continue;
                patch_of[j] = pid;
                patches[pid].push_back(j);
                for (int v : tris[j].v) patch_verts.insert(v);
                q.push(j);
            }
        }
    }

    // Boundary cycle of each patch, in the orientation inherited from the
    // triangles (outward).
    std::vector<std::vector<int>> faces;
    for (const auto& patch : patches) {
        std::set<std::pair<int, int>> dir;
        for (int i : patch)
            for (int k = 0; k < 3; ++k) dir.insert({tris[i].v[k], tris[i].v[(k + 1) % 3]});
        std::map<int, int> next;
        for (const auto& e : dir)
            if (!dir.count({e.second, e.first})) next[e.first] = e.second;
        if (next.empty()) throw NumericalFailure("convex_hull: patch has no boundary");
        std::vector<int> cycle;
        int start = next.begin()->first;
        int cur = start;
        do {
            cycle.push_back(cur);
            auto it = next.find(cur);
            if (it == next.end())
                throw NumericalFailure("convex_hull: patch boundary is not a cycle");
            cur = it->second;
        } while (cur != start && cycle.size() <= next.size());
        if (cur != start || cycle.size() != next.size())
            throw NumericalFailure("convex_hull: patch boundary is not a single cycle");
        faces.push_back(cycle);
    }

    // Keep only vertices used by the final faces.
    std::map<int, int> remap;
    Polyhedron out;
    for (auto& f : faces)
        for (int& v : f) {
            auto it = remap.find(v);
            if (it == remap.end()) {
                it = remap.insert({v, static_cast<int>(out.vertices.size())}).first;
                out.vertices.push_back(points[v]);
            }
            v = it->second;
        }
    out.faces = std::move(faces);
    require_valid(out);
    return out;
}

namespace {

// Face cycles around each vertex of a convex polyhedron, consecutive faces
// sharing an edge at the vertex. Used to dualize.
std::vector<std::vector<int>> vertex_face_cycles(const Polyhedron& p) {
    std::map<std::pair<int, int>, int> owner;  // directed edge -> face
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        const auto& cycle = p.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) owner[{cycle[i], cycle[(i + 1) % k]}] = f;
    }
    // At vertex w inside face f (... a, w, b ...), the next face around w is
    // the one across the directed edge (w, a).
    std::map<int, std::map<int, std::pair<int, int>>> at;  // w -> face -> (a, b)
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        const auto& cycle = p.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) {
            int a = cycle[(i + k - 1) % k], w = cycle[i], b = cycle[(i + 1) % k];
            at[w][f] = {a, b};
        }
    }
    std::vector<std::vector<int>> cycles(p.vertices.size());
    for (auto& [w, fmap] : at) {
        int f0 = fmap.begin()->first;
        int f = f0;
        std::vector<int> cyc;
        do {
            cyc.push_back(f);
            auto [a, b] = fmap.at(f);
            (void)b;
            f = owner.at({w, a});
        } while (f != f0 && cyc.size() <= fmap.size());
        if (f != f0 || cyc.size() != fmap.size())
            throw NumericalFailure("vertex star is not a single cycle");
        cycles[w] = cyc;
    }
    return cycles;
}

}  // namespace

Polyhedron polar_dual(const Polyhedron& p) {
    require_valid(p);
    Polyhedron dual;
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        Plane pl = face_plane(p, f).plane;
        if (pl.offset <= 0.0)
            throw DegenerateInput("polar_dual: origin is not interior");
        dual.vertices.push_back(pl.normal / pl.offset);
    }
    dual.faces = vertex_face_cycles(p);
    dual = oriented_positive(std::move(dual));
    require_valid(dual);
    return dual;
}

Polyhedron halfspace_intersection(const std::vector<Plane>& planes) {
    std::vector<Vec3> dual_pts;
    dual_pts.reserve(planes.size());
    for (const Plane& pl : planes) {
        if (pl.offset <= 0.0)
            throw DegenerateInput("halfspace_intersection: origin must be interior");
        dual_pts.push_back(pl.normal / pl.offset);
    }
    Polyhedron dual_hull = convex_hull(dual_pts);
    return polar_dual(dual_hull);
}

Polyhedron clip(const Polyhedron& p, const Vec3& n_in, double d, double tol) {
    require_valid(p);
    Vec3 n = normalized(n_in);
    d = d / norm(n_in);

    const int nv = static_cast<int>(p.vertices.size());
    std::vector<double> val(nv);
    double scale = 1.0;
    for (int i = 0; i < nv; ++i) {
        val[i] = dot(n, p.vertices[i]) - d;
        scale = std::max(scale, std::fabs(dot(n, p.vertices[i])));
    }
    bool all_in = true, all_out = true, near_vertex = false;
    for (double v : val) {
        if (v > 0) all_in = false;
        if (v < 0) all_out = false;
        if (std::fabs(v) <= tol * scale) near_vertex = true;
    }
    if (near_vertex)
        throw DegenerateInput("clip: plane passes through a vertex; nudge the plane");
    if (all_in) return p;
    if (all_out) throw DegenerateInput("clip: nothing remains");

    // New vertex on each crossing edge, shared between the two faces.
    std::map<std::pair<int, int>, int> cut_index;
    std::vector<Vec3> new_pts;
    auto cut_point = [&](int i, int j) {
        auto key = std::minmax(i, j);
        auto it = cut_index.find({key.first, key.second});
        if (it != cut_index.end()) return it->second;
        double t = val[i] / (val[i] - val[j]);
        Vec3 q = p.vertices[i] + t * (p.vertices[j] - p.vertices[i]);
        int idx = nv + static_cast<int>(new_pts.size());
        new_pts.push_back(q);
        cut_index[{key.first, key.second}] = idx;
        return idx;
    };

    std::vector<std::vector<int>> out_faces;
    for (const auto& cycle : p.faces) {
        const int k = static_cast<int>(cycle.size());
        std::vector<int> kept;
        bool has_original = false;
        for (int i = 0; i < k; ++i) {
            int a = cycle[i], b = cycle[(i + 1) % k];
            if (val[a] < 0) {
                kept.push_back(a);
                has_original = true;
            }
            if ((val[a] < 0) != (val[b] < 0)) kept.push_back(cut_point(a, b));
        }
        if (!has_original || kept.size() < 3) continue;
        out_faces.push_back(kept);
    }

    // Section polygon: convex, so angular order about its centroid works.
    if (new_pts.size() >= 3) {
        Vec3 c{0, 0, 0};
        for (const Vec3& q : new_pts) c += q;
        c = c / static_cast<double>(new_pts.size());
        Vec3 ref = normalized(new_pts[0] - c);
        Vec3 up = cross(n, ref);
        std::vector<std::pair<double, int>> order;
        for (int i = 0; i < static_cast<int>(new_pts.size()); ++i) {
            Vec3 r = new_pts[i] - c;
            order.push_back({std::atan2(dot(r, up), dot(r, ref)), nv + i});
        }
        std::sort(order.begin(), order.end());
        std::vector<int> cycle;
        for (const auto& [ang, idx] : order) {
            (void)ang;
            cycle.push_back(idx);
        }
        out_faces.push_back(cycle);
    }

    // Reindex to the vertices that survive.
    std::map<int, int> remap;
    Polyhedron out;
    for (auto& f : out_faces)
        for (int& v : f) {
            auto it = remap.find(v);
            if (it == remap.end()) {
                Vec3 q = v < nv ? p.vertices[v] : new_pts[v - nv];
                it = remap.insert({v, static_cast<int>(out.vertices.size())}).first;
                out.vertices.push_back(q);
            }
            v = it->second;
        }
    out.faces = std::move(out_faces);
    out = oriented_positive(std::move(out));
    require_valid(out);
    return out;
}

}  // namespace hedra
