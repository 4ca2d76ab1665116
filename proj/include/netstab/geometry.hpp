// Exact 2-D convex polygon toolkit for rate regions. Polygons are stored as
// counter-clockwise vertex lists starting at the lexicographically smallest
// vertex; points and segments are valid (degenerate) polygons because the
// region assembly sums cell hulls that are often segments.
#pragma once

#include <span>
#include <vector>

namespace netstab {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point o, Point a, Point b);

class ConvexPolygon {
public:
    ConvexPolygon() = default;

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    bool empty() const { return verts_.empty(); }
    bool is_point() const { return verts_.size() == 1; }
    bool is_segment() const { return verts_.size() == 2; }

    double area() const;
    // Support function h(d) = max over the polygon of <d, p>.
    double support(Point dir) const;
    Point support_point(Point dir) const;

    // Adopts an already-convex CCW vertex list (deduped, canonical start).
    static ConvexPolygon from_ccw(std::vector<Point> verts);

private:
    std::vector<Point> verts_;
};

// Minimal convex polygon containing all points. Throws on empty input.
ConvexPolygon convex_hull(std::span<const Point> points);

// Every vertex multiplied by a >= 0. Throws on a < 0.
ConvexPolygon scale(const ConvexPolygon& poly, double a);

// Minkowski sum of two convex polygons (degenerate operands welcome).
ConvexPolygon minkowski_sum(const ConvexPolygon& p, const ConvexPolygon& q);

// Euclidean distance from a point to the polygon as a set (0 when inside).
double distance_to_polygon(const ConvexPolygon& poly, Point p);
// Distance from a point to the polygon boundary (positive inside too).
double distance_to_boundary(const ConvexPolygon& poly, Point p);

bool contains_point(const ConvexPolygon& poly, Point p, double tol);
// True iff every vertex of inner lies in outer within tol.
bool contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol);

// Symmetric Hausdorff distance between the two boundaries, evaluated on a
// dense edge sampling (distance is 1-Lipschitz, so the sampling error is
// bounded by half the sample spacing; spacing is ~diameter/2048).
double hausdorff_distance(const ConvexPolygon& p, const ConvexPolygon& q);

inline double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace netstab
