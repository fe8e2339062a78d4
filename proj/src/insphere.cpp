#include "hedra/insphere.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hedra/errors.h"

namespace hedra {

namespace {

constexpr double kTol = 1e-10;

// Dense primal simplex on the tableau
//   minimize c.x  subject to  A.x <= b, x >= 0, b >= 0,
// starting from the all-slack basis. Sizes here are tiny (rows = face count),
// so a straightforward tableau with Bland's anti-cycling rule is plenty.
struct SimplexResult {
    std::vector<double> x;
    bool ok = false;
};

SimplexResult simplex_min(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b, const std::vector<double>& c) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    // Tableau: m constraint rows over n structural + m slack columns + rhs,
    // then the reduced-cost row at index m.
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = b[i];
    }
    for (int j = 0; j < n; ++j) t[m][j] = c[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const int max_iters = 200 * (n + m);
    int degenerate_streak = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        // Entering column: most negative reduced cost, or Bland's smallest
        // index once degenerate pivots pile up.
        int enter = -1;
        if (degenerate_streak < 2 * (n + m)) {
            double best = -kTol;
            for (int j = 0; j < n + m; ++j)
                if (t[m][j] < best) {
                    best = t[m][j];
                    enter = j;
                }
        } else {
            for (int j = 0; j < n + m; ++j)
                if (t[m][j] < -kTol) {
                    enter = j;
                    break;
                }
        }
        if (enter < 0) {
            SimplexResult res;
            res.x.assign(n, 0.0);
            for (int i = 0; i < m; ++i)
                if (basis[i] < n) res.x[basis[i]] = t[i][n + m];
            res.ok = true;
            return res;
        }

        // Leaving row by ratio test; ties broken by smallest basis index.
        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] > kTol) {
                double ratio = t[i][n + m] / t[i][enter];
                if (leave < 0 || ratio < best_ratio - kTol ||
                    (ratio < best_ratio + kTol && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) return {};  // unbounded
        degenerate_streak = best_ratio < kTol ? degenerate_streak + 1 : 0;

        double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return {};
}

}  // namespace

Insphere chebyshev_center(const std::vector<Plane>& planes, const Vec3& interior_point) {
    const int m = static_cast<int>(planes.size());
    if (m < 4) throw DegenerateInput("chebyshev_center: need at least 4 planes");

    // Shift so the interior point is the origin; then every offset is
    // positive and the all-slack basis is feasible.
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
        b[i] = planes[i].offset - dot(planes[i].normal, interior_point);
        if (b[i] <= 0.0)
            throw DegenerateInput("chebyshev_center: reference point not interior");
    }

    // Variables: center split into positive and negative parts (6) plus the
    // radius (1); maximize the radius = minimize its negative.
    std::vector<std::vector<double>> a(m, std::vector<double>(7, 0.0));
    for (int i = 0; i < m; ++i) {
        const Vec3& n = planes[i].normal;
        a[i][0] = n.x;  a[i][1] = n.y;  a[i][2] = n.z;
        a[i][3] = -n.x; a[i][4] = -n.y; a[i][5] = -n.z;
        a[i][6] = 1.0;
    }
    std::vector<double> c(7, 0.0);
    c[6] = -1.0;

    SimplexResult res = simplex_min(a, b, c);
    if (!res.ok) throw NumericalFailure("chebyshev_center: simplex did not terminate");

    Insphere s;
    s.center = Vec3{res.x[0] - res.x[3], res.x[1] - res.x[4], res.x[2] - res.x[5]} +
               interior_point;
    s.radius = res.x[6];

    // Independent feasibility check on the reported optimum.
    double lo = std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (const Plane& pl : planes) {
        lo = std::min(lo, pl.offset - dot(pl.normal, s.center));
        scale = std::max(scale, std::fabs(pl.offset));
    }
    if (!(s.radius > 0.0) || std::fabs(lo - s.radius) > 1e-7 * std::max(1.0, scale))
        throw NumericalFailure("chebyshev_center: solution failed verification");
    return s;
}

Insphere insphere(const Polyhedron& p) {
    require_valid(p);
    if (!is_convex(p)) throw NonConvexInput("insphere: input is not convex");

    std::vector<Plane> planes;
    planes.reserve(p.faces.size());
    for (int f = 0; f < static_cast<int>(p.faces.size()); ++f)
        planes.push_back(face_plane(p, f).plane);
    return chebyshev_center(planes, vertex_centroid(p));
}

}  // namespace hedra
