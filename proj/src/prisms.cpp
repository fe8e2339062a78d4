#include "hedra/prisms.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hedra/errors.h"

namespace hedra {

using std::numbers::pi;

double polygon_area(const Polygon& poly) {
    const int k = static_cast<int>(poly.size());
    double two_a = 0.0;
    for (int i = 0; i < k; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % k];
        two_a += a.x * b.y - b.x * a.y;
    }
    return 0.5 * two_a;
}

double polygon_perimeter(const Polygon& poly) {
    const int k = static_cast<int>(poly.size());
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % k];
        s += std::hypot(b.x - a.x, b.y - a.y);
    }
    return s;
}

Vec2 polygon_centroid(const Polygon& poly) {
    const int k = static_cast<int>(poly.size());
    double cx = 0.0, cy = 0.0, two_a = 0.0;
    for (int i = 0; i < k; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % k];
        double w = a.x * b.y - b.x * a.y;
        two_a += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    if (two_a == 0.0) throw DegenerateInput("polygon_centroid: zero area");
    return {cx / (3.0 * two_a), cy / (3.0 * two_a)};
}

Polygon regular_polygon(int k) {
    if (k < 3 || k > 64) throw OutOfRange("regular_polygon: k must be in [3, 64]");
    const double r = 1.0 / (2.0 * std::sin(pi / k));
    Polygon poly;
    poly.reserve(k);
    for (int i = 0; i < k; ++i) {
        double a = 2.0 * pi * i / k;
        poly.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return poly;
}

namespace {

// Pentagon circumscribed about the unit circle with the given interior
// angles (summing to 3*pi). Side j supports the tangent line with outward
// normal at accumulated turning angle; vertex j is the meet of sides j and
// j+1.
Polygon tangent_pentagon(const std::array<double, 5>& angles) {
    std::array<double, 5> psi;  // outward normal direction of each side
    psi[0] = -pi / 2.0;
    for (int j = 0; j < 4; ++j) psi[j + 1] = psi[j] + (pi - angles[j]);
    Polygon poly(5);
    for (int j = 0; j < 5; ++j) {
        // Lines cos(psi)x + sin(psi)y = 1 for sides j and j+1.
        double a1 = psi[j], a2 = psi[(j + 1) % 5];
        double det = std::cos(a1) * std::sin(a2) - std::cos(a2) * std::sin(a1);
        if (std::fabs(det) < 1e-12) throw NumericalFailure("tangent_pentagon: parallel sides");
        poly[j] = {(std::sin(a2) - std::sin(a1)) / det, (std::cos(a1) - std::cos(a2)) / det};
    }
    if (polygon_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

}  // namespace

Polygon cairo_pentagon() {
    return tangent_pentagon({2 * pi / 3, pi / 2, 2 * pi / 3, pi / 2, 2 * pi / 3});
}

Polygon prismatic_pentagon() {
    return tangent_pentagon({2 * pi / 3, 2 * pi / 3, 2 * pi / 3, pi / 2, pi / 2});
}

PrismSpec optimal_prism(const Polygon& base_in) {
    if (base_in.size() < 3) throw DegenerateInput("optimal_prism: need at least 3 vertices");
    Polygon base = base_in;
    double a0 = polygon_area(base);
    if (a0 < 0.0) {
        std::reverse(base.begin(), base.end());
        a0 = -a0;
    }
    const double p0 = polygon_perimeter(base);
    if (!(a0 > 1e-12 * p0 * p0)) throw DegenerateInput("optimal_prism: degenerate base polygon");

    PrismSpec spec;
    spec.surface_area = 3.0 * std::cbrt(p0 * p0 / (2.0 * a0));
    spec.h = std::pow(4.0 * std::sqrt(a0) / p0, 2.0 / 3.0);
    const double lambda = std::cbrt(p0 / (4.0 * a0 * a0));
    for (Vec2& v : base) v = {lambda * v.x, lambda * v.y};
    spec.base = std::move(base);
    spec.A0 = lambda * lambda * a0;
    spec.P0 = lambda * p0;
    if (spec.P0 * spec.P0 < 4.0 * pi * spec.A0 * (1.0 - 1e-12))
        throw NumericalFailure("optimal_prism: isoperimetric sanity violated");
    return spec;
}

Polyhedron make_right_prism(const Polygon& base_in, double h) {
    if (base_in.size() < 3) throw DegenerateInput("make_right_prism: need at least 3 vertices");
    if (!(h > 0.0)) throw OutOfRange("make_right_prism: height must be positive");
    Polygon base = base_in;
    if (polygon_area(base) < 0.0) std::reverse(base.begin(), base.end());
    Vec2 c = polygon_centroid(base);
    const int k = static_cast<int>(base.size());

    Polyhedron p;
    for (const Vec2& v : base) p.vertices.push_back({v.x - c.x, v.y - c.y, 0.0});
    for (const Vec2& v : base) p.vertices.push_back({v.x - c.x, v.y - c.y, h});
    std::vector<int> bottom(k), top(k);
    for (int i = 0; i < k; ++i) {
        bottom[i] = k - 1 - i;  // reversed: outward -z
        top[i] = k + i;
    }
    p.faces.push_back(bottom);
    p.faces.push_back(top);
    for (int i = 0; i < k; ++i) {
        int j = (i + 1) % k;
        p.faces.push_back({i, j, k + j, k + i});
    }
    require_valid(p);
    return p;
}

}  // namespace hedra
