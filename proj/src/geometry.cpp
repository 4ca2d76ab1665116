#include "netstab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace netstab {

namespace {

constexpr double kVertexTol = 1e-12;   // dedup tolerance, rate units
constexpr double kAngularTol = 1e-12;  // collinearity threshold on sin(turn)

double norm(Point p) { return std::hypot(p.x, p.y); }

bool near_equal(Point a, Point b) {
    return std::abs(a.x - b.x) <= kVertexTol && std::abs(a.y - b.y) <= kVertexTol;
}

// Turn at a is considered non-left (pop it) when the signed area is below an
// angular tolerance scaled by the adjacent edge lengths.
bool non_left_turn(Point o, Point a, Point b) {
    const double c = cross(o, a, b);
    return c <= kAngularTol * norm(a - o) * norm(b - a);
}

double point_segment_distance(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) return norm(p - a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

}  // namespace

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Point> verts) {
    ConvexPolygon poly;
    poly.verts_ = std::move(verts);
    return poly;
}

double ConvexPolygon::area() const {
    if (verts_.size() < 3) return 0.0;
    double a = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point& u = verts_[i];
        const Point& v = verts_[(i + 1) % verts_.size()];
        a += u.x * v.y - v.x * u.y;
    }
    return 0.5 * a;
}

double ConvexPolygon::support(Point dir) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const Point& v : verts_) best = std::max(best, dot(dir, v));
    return best;
}

Point ConvexPolygon::support_point(Point dir) const {
    Point best = verts_.empty() ? Point{} : verts_.front();
    double best_val = -std::numeric_limits<double>::infinity();
    for (const Point& v : verts_) {
        const double val = dot(dir, v);
        if (val > best_val) {
            best_val = val;
            best = v;
        }
    }
    return best;
}

ConvexPolygon convex_hull(std::span<const Point> points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");

    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return near_equal(a, b); }),
              pts.end());

    if (pts.size() <= 2) return ConvexPolygon::from_ccw(std::move(pts));

    // Andrew monotone chain; collinear points are dropped.
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {  // lower hull
        while (k >= 2 && non_left_turn(hull[k - 2], hull[k - 1], p)) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper hull
        while (k >= lower && non_left_turn(hull[k - 2], hull[k - 1], *it)) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);  // last point repeats the first
    return ConvexPolygon::from_ccw(std::move(hull));
}

ConvexPolygon scale(const ConvexPolygon& poly, double a) {
    if (a < 0.0) throw std::invalid_argument("scale: negative factor");
    std::vector<Point> verts;
    verts.reserve(poly.size());
    for (const Point& v : poly.vertices()) verts.push_back(a * v);
    // Scaling by 0 collapses everything onto the origin.
    return convex_hull(verts);
}

ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q) {
    if (p.empty() || q.empty()) throw std::invalid_argument("minkowski_sum: empty polygon");
    std::vector<Point> sums;
    sums.reserve(p.size() * q.size());
    for (const Point& a : p.vertices())
        for (const Point& b : q.vertices()) sums.push_back(a + b);
    return convex_hull(sums);
}

double distance_to_boundary(const ConvexPolygon& poly, Point p) {
    const auto& v = poly.vertices();
    if (v.empty()) throw std::invalid_argument("distance_to_boundary: empty polygon");
    if (v.size() == 1) return norm(p - v[0]);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return best;
}

double distance_to_polygon(const ConvexPolygon& poly, Point p) {
    const auto& v = poly.vertices();
    if (v.empty()) throw std::invalid_argument("distance_to_polygon: empty polygon");
    if (v.size() >= 3) {
        bool inside = true;
        for (std::size_t i = 0; i < v.size() && inside; ++i) {
            if (cross(v[i], v[(i + 1) % v.size()], p) < 0.0) inside = false;
        }
        if (inside) return 0.0;
    }
    return distance_to_boundary(poly, p);
}

bool contains_point(const ConvexPolygon& poly, Point p, double tol) {
    return distance_to_polygon(poly, p) <= tol;
}

bool contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol) {
    for (const Point& v : inner.vertices())
        if (!contains_point(outer, v, tol)) return false;
    return true;
}

namespace {

double directed_hausdorff(const ConvexPolygon& from, const ConvexPolygon& to) {
    const auto& v = from.vertices();
    double diam = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            diam = std::max(diam, norm(v[i] - v[j]));

    double best = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % n];
        const double len = norm(b - a);
        const std::size_t steps =
            diam > 0.0 ? std::max<std::size_t>(1, static_cast<std::size_t>(len / diam * 2048.0))
                       : 1;
        for (std::size_t s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) / static_cast<double>(steps);
            best = std::max(best, distance_to_boundary(to, a + t * (b - a)));
        }
        if (n == 1) break;  // single point, one probe is enough
    }
    return best;
}

}  // namespace

double hausdorff_distance(const ConvexPolygon& p, const ConvexPolygon& q) {
    if (p.empty() || q.empty())
        throw std::invalid_argument("hausdorff_distance: empty polygon");
    return std::max(directed_hausdorff(p, q), directed_hausdorff(q, p));
}

}  // namespace netstab
