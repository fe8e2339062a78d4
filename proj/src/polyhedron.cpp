#include "hedra/polyhedron.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "hedra/errors.h"

namespace hedra {

namespace {

std::string face_tag(int f) { return "face " + std::to_string(f); }

}  // namespace

std::vector<std::string> validate(const Polyhedron& p) {
    std::vector<std::string> report;
    const int nv = static_cast<int>(p.vertices.size());
    const int nf = static_cast<int>(p.faces.size());

    for (const Vec3& v : p.vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
            report.push_back("non-finite vertex coordinate");
            return report;
        }
    }
    if (nv < 4 || nf < 4) {
        report.push_back("fewer than 4 vertices or faces");
        return report;
    }

    // Face index sanity first; later checks assume it.
    for (int f = 0; f < nf; ++f) {
        const auto& cycle = p.faces[f];
        if (cycle.size() < 3) {
            report.push_back(face_tag(f) + ": fewer than 3 vertices");
            return report;
        }
        std::set<int> distinct(cycle.begin(), cycle.end());
        if (distinct.size() != cycle.size())
            report.push_back(face_tag(f) + ": repeated vertex index");
        for (int idx : cycle)
            if (idx < 0 || idx >= nv) {
                report.push_back(face_tag(f) + ": vertex index out of range");
                return report;
            }
    }
    if (!report.empty()) return report;

    // Edge pairing: every directed edge once, every undirected edge twice in
    // opposite directions.
    std::map<std::pair<int, int>, int> directed;
    bool pairing_ok = true;
    for (int f = 0; f < nf; ++f) {
        const auto& cycle = p.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) {
            std::pair<int, int> e{cycle[i], cycle[(i + 1) % k]};
            if (++directed[e] > 1) {
                report.push_back("directed edge " + std::to_string(e.first) + "->" +
                                 std::to_string(e.second) + " appears more than once");
                pairing_ok = false;
            }
        }
    }
    std::set<std::pair<int, int>> undirected;
    for (const auto& [e, cnt] : directed) {
        (void)cnt;
        auto key = std::minmax(e.first, e.second);
        undirected.insert({key.first, key.second});
        if (!directed.count({e.second, e.first})) {
            report.push_back("edge " + std::to_string(e.first) + "-" +
                             std::to_string(e.second) + " lacks an oppositely oriented twin");
            pairing_ok = false;
        }
    }
    if (!pairing_ok) return report;

    // Every vertex must appear in some face, else the Euler count is off for
    // a trivial reason worth naming.
    std::vector<char> used(nv, 0);
    for (const auto& f : p.faces)
        for (int idx : f) used[idx] = 1;
    for (int v = 0; v < nv; ++v)
        if (!used[v]) report.push_back("vertex " + std::to_string(v) + " unused by any face");

    const int ne = static_cast<int>(undirected.size());
    if (nv - ne + nf != 2)
        report.push_back("Euler characteristic V-E+F = " + std::to_string(nv - ne + nf) +
                         ", expected 2");

    // Connectivity of the face adjacency graph.
    {
        std::map<std::pair<int, int>, std::vector<int>> edge_faces;
        for (int f = 0; f < nf; ++f) {
            const auto& cycle = p.faces[f];
            const int k = static_cast<int>(cycle.size());
            for (int i = 0; i < k; ++i) {
                auto key = std::minmax(cycle[i], cycle[(i + 1) % k]);
                edge_faces[{key.first, key.second}].push_back(f);
            }
        }
        std::vector<std::vector<int>> adj(nf);
        for (const auto& [e, fs] : edge_faces) {
            (void)e;
            if (fs.size() == 2) {
                adj[fs[0]].push_back(fs[1]);
                adj[fs[1]].push_back(fs[0]);
            }
        }
        std::vector<char> seen(nf, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int count = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int g : adj[f])
                if (!seen[g]) {
                    seen[g] = 1;
                    ++count;
                    q.push(g);
                }
        }
        if (count != nf) report.push_back("surface is not connected");
    }

    // Planarity against the least-squares plane, relative to diameter.
    const double diam = diameter(p);
    const double tol = kPlanarityTol * diam;
    for (int f = 0; f < nf; ++f) {
        PlaneFit fit = face_plane(p, f);
        if (fit.max_deviation > tol) {
            std::ostringstream os;
            os << face_tag(f) << ": not planar, deviation " << fit.max_deviation
               << " exceeds " << tol;
            report.push_back(os.str());
        }
    }

    double vol = volume_raw(p);
    if (!(vol > 0.0)) report.push_back("signed volume is not positive");

    return report;
}

void require_valid(const Polyhedron& p) {
    auto report = validate(p);
    if (report.empty()) return;
    std::string msg = "invalid polyhedron:";
    for (const auto& r : report) msg += "\n  - " + r;
    throw InvalidPolyhedron(msg);
}

Vec3 face_vector_area(const Polyhedron& p, int face) {
    const auto& cycle = p.faces[face];
    const int k = static_cast<int>(cycle.size());
    Vec3 s{0, 0, 0};
    for (int i = 0; i < k; ++i) {
        const Vec3& a = p.vertices[cycle[i]];
        const Vec3& b = p.vertices[cycle[(i + 1) % k]];
        s += cross(a, b);
    }
    return s * 0.5;
}

Vec3 face_unit_normal(const Polyhedron& p, int face) {
    return normalized(face_vector_area(p, face));
}

double face_area(const Polyhedron& p, int face) {
    return norm(face_vector_area(p, face));
}

Vec3 face_centroid(const Polyhedron& p, int face) {
    const auto& cycle = p.faces[face];
    const int k = static_cast<int>(cycle.size());
    Vec3 ref = p.vertices[cycle[0]];
    Vec3 n = face_unit_normal(p, face);
    Vec3 acc{0, 0, 0};
    double total = 0.0;
    for (int i = 1; i + 1 < k; ++i) {
        const Vec3& a = p.vertices[cycle[i]];
        const Vec3& b = p.vertices[cycle[i + 1]];
        // Signed triangle area about the face normal keeps non-convex
        // polygons correct.
        double s = 0.5 * dot(cross(a - ref, b - ref), n);
        acc += s * (ref + a + b) / 3.0;
        total += s;
    }
    if (total == 0.0) return ref;
    return acc / total;
}

PlaneFit face_plane(const Polyhedron& p, int face) {
    const auto& cycle = p.faces[face];
    Vec3 c{0, 0, 0};
    for (int idx : cycle) c += p.vertices[idx];
    c = c / static_cast<double>(cycle.size());

    Mat3 cov = Mat3::diag(0, 0, 0);
    for (int idx : cycle) {
        Vec3 d = p.vertices[idx] - c;
        cov(0, 0) += d.x * d.x; cov(0, 1) += d.x * d.y; cov(0, 2) += d.x * d.z;
        cov(1, 0) += d.y * d.x; cov(1, 1) += d.y * d.y; cov(1, 2) += d.y * d.z;
        cov(2, 0) += d.z * d.x; cov(2, 1) += d.z * d.y; cov(2, 2) += d.z * d.z;
    }
    SymEigen3 eig = sym_eigen3(cov);
    Vec3 n = eig.vectors[0];  // least-variance direction
    // Align with the face orientation.
    if (dot(n, face_vector_area(p, face)) < 0.0) n = -n;

    PlaneFit fit;
    fit.plane.normal = n;
    fit.plane.offset = dot(n, c);
    for (int idx : cycle)
        fit.max_deviation =
            std::max(fit.max_deviation, std::fabs(dot(n, p.vertices[idx]) - fit.plane.offset));
    return fit;
}

double surface_area_raw(const Polyhedron& p) {
    double a = 0.0;
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) a += face_area(p, f);
    return a;
}

double volume_raw(const Polyhedron& p) {
    double six_v = 0.0;
    for (const auto& cycle : p.faces) {
        const Vec3& ref = p.vertices[cycle[0]];
        for (size_t i = 1; i + 1 < cycle.size(); ++i) {
            const Vec3& a = p.vertices[cycle[i]];
            const Vec3& b = p.vertices[cycle[i + 1]];
            six_v += dot(ref, cross(a, b));
        }
    }
    return six_v / 6.0;
}

double volume_about_point(const Polyhedron& p, const Vec3& apex) {
    double six_v = 0.0;
    for (const auto& cycle : p.faces) {
        const Vec3 ref = p.vertices[cycle[0]] - apex;
        for (size_t i = 1; i + 1 < cycle.size(); ++i) {
            const Vec3 a = p.vertices[cycle[i]] - apex;
            const Vec3 b = p.vertices[cycle[i + 1]] - apex;
            six_v += dot(ref, cross(a, b));
        }
    }
    return six_v / 6.0;
}

double diameter(const Polyhedron& p) {
    double best = 0.0;
    const int nv = static_cast<int>(p.vertices.size());
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            best = std::max(best, norm2(p.vertices[i] - p.vertices[j]));
    return std::sqrt(best);
}

Vec3 vertex_centroid(const Polyhedron& p) {
    Vec3 c{0, 0, 0};
    for (const Vec3& v : p.vertices) c += v;
    return c / static_cast<double>(p.vertices.size());
}

Measures measures(const Polyhedron& p) {
    require_valid(p);
    Measures m;
    m.surface_area = surface_area_raw(p);
    m.volume = volume_raw(p);
    m.cost = std::pow(m.surface_area, 3) / (m.volume * m.volume);
    m.diameter = diameter(p);
    return m;
}

Polyhedron scale_to_unit_volume(const Polyhedron& p) {
    require_valid(p);
    double v = volume_raw(p);
    double s = std::pow(1.0 / v, 1.0 / 3.0);
    Polyhedron out = p;
    for (Vec3& vert : out.vertices) vert *= s;
    return out;
}

double unit_area(const Polyhedron& p) {
    double a = surface_area_raw(p);
    double v = volume_raw(p);
    return a / std::pow(v, 2.0 / 3.0);
}

std::vector<std::pair<int, int>> edges(const Polyhedron& p) {
    std::set<std::pair<int, int>> s;
    for (const auto& cycle : p.faces) {
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(cycle[i], cycle[(i + 1) % k]);
            s.insert({key.first, key.second});
        }
    }
    return {s.begin(), s.end()};
}

double min_edge_length(const Polyhedron& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : edges(p)) best = std::min(best, norm(p.vertices[a] - p.vertices[b]));
    return best;
}

std::map<std::pair<int, int>, double> dihedral_angles(const Polyhedron& p) {
    require_valid(p);
    // Face on each side of every directed edge.
    std::map<std::pair<int, int>, int> owner;
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        const auto& cycle = p.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) owner[{cycle[i], cycle[(i + 1) % k]}] = f;
    }
    std::map<std::pair<int, int>, double> out;
    for (const auto& [e, fl] : owner) {
        auto [a, b] = e;
        if (a > b) continue;  // one entry per undirected edge
        int fr = owner.at({b, a});
        Vec3 nl = face_unit_normal(p, fl);
        Vec3 nr = face_unit_normal(p, fr);
        Vec3 ed = normalized(p.vertices[b] - p.vertices[a]);
        // Angle between inward half-planes: 180 degrees minus the normal
        // angle, extended past 180 for reflex edges using the sign of the
        // scalar triple product.
        double c = std::clamp(dot(nl, nr), -1.0, 1.0);
        double s = dot(cross(nl, nr), ed);
        double interior = 180.0 - std::atan2(s, c) * 180.0 / std::numbers::pi;
        if (interior <= 0.0) interior += 360.0;
        if (interior >= 360.0) interior -= 360.0;
        out[{a, b}] = interior;
    }
    return out;
}

bool is_convex(const Polyhedron& p, double tol_factor) {
    const double tol = tol_factor * std::max(1.0, diameter(p));
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f) {
        PlaneFit fit = face_plane(p, f);
        for (const Vec3& v : p.vertices)
            if (dot(fit.plane.normal, v) - fit.plane.offset > tol) return false;
    }
    return true;
}

Polyhedron oriented_positive(Polyhedron p) {
    if (volume_raw(p) < 0.0)
        for (auto& f : p.faces) std::reverse(f.begin(), f.end());
    return p;
}

}  // namespace hedra
