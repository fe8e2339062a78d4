#include "hedra/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hedra/errors.h"

namespace hedra {

using std::numbers::pi;

BoundResult goldberg_bound(int f) {
    if (f < 4) throw OutOfRange("goldberg_bound: need at least 4 faces");
    const double w = pi * f / (6.0 * (f - 2));
    const double cost = 54.0 * (f - 2) * std::tan(w) * (4.0 * std::sin(w) * std::sin(w) - 1.0);
    BoundResult r;
    r.bound_value = std::cbrt(cost);
    if (f == 4) r.attained_by = "regular-tetrahedron";
    if (f == 6) r.attained_by = "cube";
    if (f == 12) r.attained_by = "regular-dodecahedron";
    return r;
}

double pyramid_lateral_bound(double S, double p, double h) {
    if (!(S > 0.0) || !(p > 0.0) || h < 0.0)
        throw OutOfRange("pyramid_lateral_bound: need S > 0, p > 0, h >= 0");
    return 0.5 * std::sqrt(4.0 * S * S + p * p * h * h);
}

SquarePyramidOptimum square_pyramid_optimum() {
    SquarePyramidOptimum opt;
    // Minimize a^2 + 2a*sqrt(h^2 + a^2/4) subject to a^2 h = 3 (unit volume).
    // With S = a^2 the objective is S + sqrt(S^2 + 36/S); the stationary point
    // sits at S = 2^(-1/3) 3^(2/3), so a = 2^(-1/6) 3^(1/3) and h = 3/S = 6^(1/3),
    // giving total area 2^(5/3) 3^(2/3).
    opt.base_side = std::pow(2.0, -1.0 / 6.0) * std::cbrt(3.0);
    opt.height = std::cbrt(6.0);
    opt.surface_area = std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, 2.0 / 3.0);

    const double a = opt.base_side / 2.0;
    Polyhedron p;
    p.vertices = {{-a, -a, 0}, {a, -a, 0}, {a, a, 0}, {-a, a, 0}, {0, 0, opt.height}};
    p.faces = {{3, 2, 1, 0}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    require_valid(p);
    opt.shape = std::move(p);
    return opt;
}

double diameter_bound(double P0) {
    if (!(P0 > 0.0)) throw OutOfRange("diameter_bound: P0 must be positive");
    return 3.0 * P0 * P0 / (2.0 * pi);
}

namespace {

// Andrew monotone chain over 2-D points; returns the hull counterclockwise.
std::vector<std::pair<double, double>> hull2d(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return {};
    auto cross2 = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                     const std::pair<double, double>& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-9) --k;
        h[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 1e-9) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

Polyhedron random_pyramid(std::mt19937& rng, int base_points) {
    if (base_points < 3) throw OutOfRange("random_pyramid: need at least 3 base points");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::pair<double, double>> hull;
    while (hull.size() < 3) {
        std::vector<std::pair<double, double>> pts;
        while (static_cast<int>(pts.size()) < base_points) {
            double x = u(rng), y = u(rng);
            if (x * x + y * y <= 1.0) pts.push_back({x, y});
        }
        hull = hull2d(std::move(pts));
        // Reject slivers that would strain the planarity tolerance.
        if (!hull.empty()) {
            double area = 0.0;
            for (size_t i = 0; i < hull.size(); ++i) {
                auto& a = hull[i];
                auto& b = hull[(i + 1) % hull.size()];
                area += 0.5 * (a.first * b.second - b.first * a.second);
            }
            if (area < 0.05) hull.clear();
        }
    }
    double xlo = hull[0].first, xhi = xlo, ylo = hull[0].second, yhi = ylo;
    for (auto& q : hull) {
        xlo = std::min(xlo, q.first);
        xhi = std::max(xhi, q.first);
        ylo = std::min(ylo, q.second);
        yhi = std::max(yhi, q.second);
    }
    std::uniform_real_distribution<double> ax(xlo, xhi), ay(ylo, yhi), az(0.3, 2.0);
    Vec3 apex{ax(rng), ay(rng), az(rng)};

    Polyhedron p;
    const int k = static_cast<int>(hull.size());
    for (auto& q : hull) p.vertices.push_back({q.first, q.second, 0.0});
    p.vertices.push_back(apex);
    std::vector<int> base(k);
    for (int i = 0; i < k; ++i) base[i] = k - 1 - i;
    p.faces.push_back(base);
    for (int i = 0; i < k; ++i) p.faces.push_back({i, (i + 1) % k, k});
    require_valid(p);
    return p;
}

}  // namespace hedra
