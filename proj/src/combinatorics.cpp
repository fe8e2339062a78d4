#include "hedra/combinatorics.h"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "hedra/errors.h"

namespace hedra {

int FaceVector::total() const {
    int s = 0;
    for (int c : counts) s += c;
    return s;
}

void enumerate_face_vectors(int n, const std::function<void(const FaceVector&)>& visit) {
    if (n < 4 || n > 20) throw OutOfRange("enumerate_face_vectors: n must be in [4, 20]");
    const int k = n - 3;  // variables x_3 ... x_{n-1}
    FaceVector fv;
    fv.n = n;
    fv.counts.assign(k, 0);
    // Odometer over compositions of n into k nonnegative parts.
    auto emit = [&]() {
        long long edge_sum = 0;
        for (int i = 0; i < k; ++i) edge_sum += static_cast<long long>(i + 3) * fv.counts[i];
        fv.even_edge_sum = edge_sum % 2 == 0;
        visit(fv);
    };
    // Recursive descent, iterative via explicit stack on remaining budget.
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            fv.counts[pos] = left;
            emit();
            fv.counts[pos] = 0;
            return;
        }
        for (int c = left; c >= 0; --c) {
            fv.counts[pos] = c;
            rec(pos + 1, left - c);
        }
        fv.counts[pos] = 0;
    };
    if (k == 1) {
        fv.counts[0] = n;
        emit();
    } else {
        rec(0, n);
    }
}

std::vector<FaceVector> enumerate_face_vectors(int n) {
    std::vector<FaceVector> out;
    enumerate_face_vectors(n, [&](const FaceVector& fv) { out.push_back(fv); });
    return out;
}

std::uint64_t face_vector_count(int n) {
    if (n < 4 || n > 20) throw OutOfRange("face_vector_count: n must be in [4, 20]");
    // C(2n-4, n) = C(2n-4, n-4), computed without overflow for n <= 20.
    const int top = 2 * n - 4, pick = n - 4;
    std::uint64_t num = 1;
    for (int i = 1; i <= pick; ++i) {
        num = num * static_cast<std::uint64_t>(top - pick + i);
        num /= static_cast<std::uint64_t>(i);
    }
    return num;
}

CombinatorialType combinatorial_type(const Polyhedron& p) {
    require_valid(p);
    return CombinatorialType{p.faces};
}

std::vector<std::string> validate_type(const CombinatorialType& t) {
    std::vector<std::string> report;
    const int nf = static_cast<int>(t.faces.size());
    if (nf < 4) {
        report.push_back("fewer than 4 faces");
        return report;
    }
    int nv = 0;
    for (const auto& f : t.faces) {
        if (f.size() < 3) {
            report.push_back("face with fewer than 3 vertices");
            return report;
        }
        std::set<int> distinct(f.begin(), f.end());
        if (distinct.size() != f.size()) {
            report.push_back("face repeats a vertex");
            return report;
        }
        for (int v : f) {
            if (v < 0) {
                report.push_back("negative vertex label");
                return report;
            }
            nv = std::max(nv, v + 1);
        }
    }
    std::vector<char> used(nv, 0);
    for (const auto& f : t.faces)
        for (int v : f) used[v] = 1;
    for (int v = 0; v < nv; ++v)
        if (!used[v]) {
            report.push_back("vertex labels are not contiguous");
            return report;
        }

    std::set<std::pair<int, int>> directed;
    bool ok = true;
    for (const auto& f : t.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i)
            if (!directed.insert({f[i], f[(i + 1) % k]}).second) {
                report.push_back("directed edge repeated");
                ok = false;
            }
    }
    std::set<std::pair<int, int>> undirected;
    for (const auto& e : directed) {
        auto key = std::minmax(e.first, e.second);
        undirected.insert({key.first, key.second});
        if (!directed.count({e.second, e.first})) {
            report.push_back("edge lacks an oppositely oriented twin");
            ok = false;
        }
    }
    if (!ok) return report;

    const int ne = static_cast<int>(undirected.size());
    if (nv - ne + nf != 2)
        report.push_back("Euler characteristic V-E+F = " + std::to_string(nv - ne + nf) +
                         ", expected 2");

    // Connectivity over shared edges.
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = t.faces[f];
        const int k = static_cast<int>(cyc.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(cyc[i], cyc[(i + 1) % k]);
            edge_faces[{key.first, key.second}].push_back(f);
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
        const auto& cyc = t.faces[f];
        const int k = static_cast<int>(cyc.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(cyc[i], cyc[(i + 1) % k]);
            for (int g : edge_faces[{key.first, key.second}])
                if (!seen[g]) {
                    seen[g] = 1;
                    ++count;
                    q.push(g);
                }
        }
    }
    if (count != nf) report.push_back("surface is not connected");
    return report;
}

void require_valid_type(const CombinatorialType& t) {
    auto report = validate_type(t);
    if (report.empty()) return;
    std::string msg = "invalid combinatorial type:";
    for (const auto& r : report) msg += "\n  - " + r;
    throw InvalidPolyhedron(msg);
}

FaceVector face_vector_of(const CombinatorialType& t) {
    require_valid_type(t);
    const int n = static_cast<int>(t.faces.size());
    FaceVector fv;
    fv.n = n;
    fv.counts.assign(std::max(1, n - 3), 0);
    long long edge_sum = 0;
    for (const auto& f : t.faces) {
        int s = static_cast<int>(f.size());
        edge_sum += s;
        int slot = s - 3;
        if (slot >= static_cast<int>(fv.counts.size())) fv.counts.resize(slot + 1, 0);
        ++fv.counts[slot];
    }
    fv.even_edge_sum = edge_sum % 2 == 0;
    return fv;
}

namespace {

// Cyclic neighbor order around every vertex, derived from the face cycles:
// after arriving at v from w, the next neighbor of v is the vertex that
// follows v in the face carrying the directed edge (w, v).
struct Rotation {
    int nv = 0;
    std::map<std::pair<int, int>, int> succ;  // (v, w) -> next neighbor of v after w
    std::map<std::pair<int, int>, int> pred;  // inverse, for the mirror orientation
    std::vector<int> degree;
};

Rotation rotation_system(const CombinatorialType& t) {
    Rotation r;
    std::map<std::pair<int, int>, int> face_next;  // directed edge -> next vertex in face
    for (const auto& f : t.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            face_next[{f[i], f[(i + 1) % k]}] = f[(i + 2) % k];
            r.nv = std::max(r.nv, f[i] + 1);
        }
    }
    for (const auto& [e, nxt] : face_next) {
        auto [w, v] = e;
        r.succ[{v, w}] = nxt;
        r.pred[{v, nxt}] = w;
    }
    r.degree.assign(r.nv, 0);
    for (const auto& [e, nxt] : r.succ) {
        (void)nxt;
        ++r.degree[e.first];
    }
    return r;
}

// BFS labeling anchored at the directed edge (a, b); at each vertex the
// neighbor fan is read starting from the discovery edge, in the chosen
// orientation. Serializes the per-vertex neighbor labels.
std::vector<int> code_from(const Rotation& r, int a, int b, bool mirror) {
    const auto& step = mirror ? r.pred : r.succ;
    std::vector<int> label(r.nv, -1);
    std::vector<int> entry(r.nv, -1);  // neighbor the vertex was discovered from
    std::vector<int> order;
    label[a] = 0;
    entry[a] = b;
    order.push_back(a);
    label[b] = 1;
    entry[b] = a;
    order.push_back(b);
    std::vector<int> out;
    for (size_t qi = 0; qi < order.size(); ++qi) {
        int v = order[qi];
        int w = entry[v];
        for (int d = 0; d < r.degree[v]; ++d) {
            if (label[w] < 0) {
                label[w] = static_cast<int>(order.size());
                entry[w] = v;
                order.push_back(w);
            }
            out.push_back(label[w]);
            w = step.at({v, w});
        }
        out.push_back(-1);
    }
    return out;
}

}  // namespace

std::string canonical_code(const CombinatorialType& t) {
    require_valid_type(t);
    Rotation r = rotation_system(t);
    std::vector<int> best;
    for (const auto& [e, nxt] : r.succ) {
        (void)nxt;
        for (bool mirror : {false, true}) {
            std::vector<int> code = code_from(r, e.first, e.second, mirror);
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    std::string s;
    s.reserve(best.size());
    for (int x : best) s.push_back(static_cast<char>(x + 1));  // separator -1 -> 0
    return s;
}

std::optional<std::pair<int, int>> is_combinatorial_prism(const CombinatorialType& t) {
    require_valid_type(t);
    const int nf = static_cast<int>(t.faces.size());
    std::set<std::pair<int, int>> all_edges;
    for (const auto& f : t.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(f[i], f[(i + 1) % k]);
            all_edges.insert({key.first, key.second});
        }
    }
    auto face_edges = [&](int fi) {
        std::set<std::pair<int, int>> es;
        const auto& f = t.faces[fi];
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(f[i], f[(i + 1) % k]);
            es.insert({key.first, key.second});
        }
        return es;
    };

    int nv = 0;
    for (const auto& f : t.faces)
        for (int v : f) nv = std::max(nv, v + 1);

    for (int i = 0; i < nf; ++i) {
        for (int j = i + 1; j < nf; ++j) {
            const int k = static_cast<int>(t.faces[i].size());
            if (static_cast<int>(t.faces[j].size()) != k) continue;
            if (nf != k + 2 || nv != 2 * k) continue;
            std::set<int> vi(t.faces[i].begin(), t.faces[i].end());
            std::set<int> vj(t.faces[j].begin(), t.faces[j].end());
            if (static_cast<int>(vi.size() + vj.size()) != 2 * k) continue;
            bool disjoint = true;
            for (int v : vj)
                if (vi.count(v)) disjoint = false;
            if (!disjoint) continue;
            auto ei = face_edges(i), ej = face_edges(j);
            bool walls_ok = true;
            for (int f = 0; f < nf && walls_ok; ++f) {
                if (f == i || f == j) continue;
                if (t.faces[f].size() != 4) {
                    walls_ok = false;
                    break;
                }
                auto ef = face_edges(f);
                int with_i = 0, with_j = 0;
                for (const auto& e : ef) {
                    if (ei.count(e)) ++with_i;
                    if (ej.count(e)) ++with_j;
                }
                if (with_i != 1 || with_j != 1) walls_ok = false;
            }
            if (walls_ok) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

FiveHedronClass classify_5hedron(const CombinatorialType& t) {
    require_valid_type(t);
    if (t.faces.size() != 5) throw OutOfRange("classify_5hedron: need exactly 5 faces");
    int tri = 0, quad = 0;
    for (const auto& f : t.faces) {
        if (f.size() == 3) ++tri;
        if (f.size() == 4) ++quad;
    }
    if (tri == 2 && quad == 3 && is_combinatorial_prism(t))
        return FiveHedronClass::TriangularPrism;
    if (tri == 4 && quad == 1) return FiveHedronClass::QuadrilateralPyramid;
    throw ClassificationFailure("classify_5hedron: type matches neither class");
}

EdgeLinesResult edge_lines_relation(const Polyhedron& p) {
    require_valid(p);
    CombinatorialType t = combinatorial_type(p);
    auto bases = is_combinatorial_prism(t);
    if (!bases || t.faces[bases->first].size() != 3)
        throw OutOfRange("edge_lines_relation: not a triangular prism");
    const auto& b0 = t.faces[bases->first];
    const auto& b1 = t.faces[bases->second];

    // Side partner of each base vertex: its unique neighbor in the other base.
    std::set<std::pair<int, int>> all_edges;
    for (const auto& f : t.faces) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            auto key = std::minmax(f[i], f[(i + 1) % k]);
            all_edges.insert({key.first, key.second});
        }
    }
    std::set<int> top(b1.begin(), b1.end());
    std::vector<std::pair<Vec3, Vec3>> lines;  // (point, unit direction)
    for (int v : b0) {
        int partner = -1;
        for (int w : b1) {
            auto key = std::minmax(v, w);
            if (all_edges.count({key.first, key.second})) partner = w;
        }
        if (partner < 0) throw RelationFailure("edge_lines_relation: missing side edge");
        lines.push_back({p.vertices[v], normalized(p.vertices[partner] - p.vertices[v])});
    }

    const double diam = diameter(p);
    bool parallel = true;
    for (int i = 0; i < 3 && parallel; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (norm(cross(lines[i].second, lines[j].second)) >= 1e-10) parallel = false;
    if (parallel) return {false, Vec3{}};

    // Closest-approach midpoints of the three line pairs.
    std::vector<Vec3> meets;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto& [p1, d1] = lines[i];
            const auto& [p2, d2] = lines[j];
            Vec3 r = p1 - p2;
            double a = dot(d1, d1), b = dot(d1, d2), c = dot(d2, d2);
            double d = dot(d1, r), e = dot(d2, r);
            double den = a * c - b * b;
            if (std::fabs(den) < 1e-20)
                throw RelationFailure("edge_lines_relation: near-parallel pair");
            double s = (b * e - c * d) / den;
            double u = (a * e - b * d) / den;
            Vec3 q1 = p1 + s * d1, q2 = p2 + u * d2;
            if (norm(q1 - q2) > 1e-8 * diam)
                throw RelationFailure("edge_lines_relation: lines are skew");
            meets.push_back(0.5 * (q1 + q2));
        }
    Vec3 common = (meets[0] + meets[1] + meets[2]) / 3.0;
    for (const Vec3& m : meets)
        if (norm(m - common) > 1e-8 * diam)
            throw RelationFailure("edge_lines_relation: pairwise meets disagree");
    return {true, common};
}

std::vector<std::vector<int>> vertex_face_cycles(const CombinatorialType& t) {
    require_valid_type(t);
    int nv = 0;
    for (const auto& f : t.faces)
        for (int v : f) nv = std::max(nv, v + 1);

    std::map<std::pair<int, int>, int> owner;  // directed edge -> face
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f) {
        const auto& cycle = t.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) owner[{cycle[i], cycle[(i + 1) % k]}] = f;
    }
    // At vertex w inside face f (... a, w, b ...), the next face around w is
    // the one across the directed edge (w, a).
    std::map<int, std::map<int, int>> before;  // w -> face -> a
    for (int f = 0; f < static_cast<int>(t.faces.size()); ++f) {
        const auto& cycle = t.faces[f];
        const int k = static_cast<int>(cycle.size());
        for (int i = 0; i < k; ++i) before[cycle[i]][f] = cycle[(i + k - 1) % k];
    }
    std::vector<std::vector<int>> cycles(nv);
    for (auto& [w, fmap] : before) {
        int f0 = fmap.begin()->first;
        int f = f0;
        std::vector<int> cyc;
        do {
            cyc.push_back(f);
            f = owner.at({w, fmap.at(f)});
        } while (f != f0 && cyc.size() <= fmap.size());
        if (f != f0 || cyc.size() != fmap.size())
            throw InvalidPolyhedron("vertex star is not a single cycle");
        cycles[w] = cyc;
    }
    return cycles;
}

CombinatorialType dual_type(const CombinatorialType& t) {
    CombinatorialType d;
    d.faces = vertex_face_cycles(t);
    require_valid_type(d);
    return d;
}

}  // namespace hedra
