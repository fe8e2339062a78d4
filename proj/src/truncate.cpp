#include "hedra/truncate.h"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include "hedra/errors.h"

namespace hedra {

Polyhedron truncate_vertex(const Polyhedron& p, int v, double t) {
    require_valid(p);
    if (v < 0 || v >= static_cast<int>(p.vertices.size()))
        throw OutOfRange("truncate_vertex: vertex index out of range");
    if (t < 0.0) throw OutOfRange("truncate_vertex: negative cut depth");
    if (t == 0.0) return p;

    const Vec3 vv = p.vertices[v];

    // Cut direction: normalized sum of unit vectors along incident edges.
    std::vector<int> neighbors;
    for (const auto& cycle : p.faces) {
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i)
            if (cycle[i] == v) neighbors.push_back(cycle[(i + 1) % k]);
    }
    if (neighbors.size() < 3)
        throw InvalidPolyhedron("truncate_vertex: vertex has fewer than 3 edges");
    Vec3 u{0, 0, 0};
    for (int w : neighbors) u += normalized(p.vertices[w] - vv);
    if (norm(u) < 1e-12) throw NonConvexVertex("truncate_vertex: flat vertex");
    u = normalized(u);

    // Transversality: every vertex of every incident face must sit strictly
    // ahead of v along u, else the plane cannot cut across the corner.
    for (const auto& cycle : p.faces) {
        if (std::find(cycle.begin(), cycle.end(), v) == cycle.end()) continue;
        for (int w : cycle)
            if (w != v && dot(u, p.vertices[w] - vv) <= 0.0)
                throw NonConvexVertex("truncate_vertex: vertex is not strictly convex");
    }

    // The plane u.x = u.v + t must separate v from every other vertex.
    double t_max = std::numeric_limits<double>::infinity();
    for (int w = 0; w < static_cast<int>(p.vertices.size()); ++w)
        if (w != v) t_max = std::min(t_max, dot(u, p.vertices[w] - vv));
    if (t >= t_max) throw CutTooDeep("truncate_vertex: cut depth reaches another vertex");

    // One new vertex per incident edge, shared by the two faces along it.
    Polyhedron out;
    out.vertices = p.vertices;
    std::map<int, int> cut_of;  // neighbor -> new vertex index
    auto cut_point = [&](int w) {
        auto it = cut_of.find(w);
        if (it != cut_of.end()) return it->second;
        double s = t / dot(u, p.vertices[w] - vv);
        int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(vv + s * (p.vertices[w] - vv));
        cut_of[w] = idx;
        return idx;
    };

    std::map<int, int> follow;  // truncation-face walk: C(b) -> C(a)
    for (const auto& cycle : p.faces) {
        const int k = static_cast<int>(cycle.size());
        int pos = -1;
        for (int i = 0; i < k; ++i)
            if (cycle[i] == v) pos = i;
        if (pos < 0) {
            out.faces.push_back(cycle);
            continue;
        }
        int a = cycle[(pos + k - 1) % k], b = cycle[(pos + 1) % k];
        int ca = cut_point(a), cb = cut_point(b);
        std::vector<int> nf;
        for (int i = 0; i < k; ++i) {
            if (cycle[i] == v) {
                nf.push_back(ca);
                nf.push_back(cb);
            } else {
                nf.push_back(cycle[i]);
            }
        }
        out.faces.push_back(nf);
        follow[cb] = ca;  // reversed edge bounds the new face
    }

    std::vector<int> section;
    int start = follow.begin()->first, cur = start;
    do {
        section.push_back(cur);
        cur = follow.at(cur);
    } while (cur != start && section.size() <= follow.size());
    if (cur != start || section.size() != follow.size())
        throw NumericalFailure("truncate_vertex: cut boundary is not a single cycle");
    out.faces.push_back(section);

    // Drop v and remap.
    out.vertices.erase(out.vertices.begin() + v);
    for (auto& f : out.faces)
        for (int& w : f)
            if (w > v) --w;
    require_valid(out);
    return out;
}

}  // namespace hedra
