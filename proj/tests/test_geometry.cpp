#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "netstab/geometry.hpp"
#include "netstab/rng.hpp"

using namespace netstab;

namespace {

ConvexPolygon unit_square() {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    return convex_hull(pts);
}

bool same_polygon(const ConvexPolygon& a, const ConvexPolygon& b, double tol) {
    return hausdorff_distance(a, b) <= tol;
}

}  // namespace

TEST_CASE("hull drops interior and collinear points") {
    const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}};
    const ConvexPolygon hull = convex_hull(pts);
    REQUIRE(hull.size() == 4);
    CHECK(same_polygon(hull, unit_square(), 0.0));

    const std::vector<Point> solo{{0, 0}};
    CHECK(convex_hull(solo).is_point());

    const std::vector<Point> collinear{{0, 0}, {0.25, 0.25}, {1, 1}};
    CHECK(convex_hull(collinear).is_segment());

    CHECK_THROWS_AS(convex_hull(std::vector<Point>{}), std::invalid_argument);
}

TEST_CASE("hull is idempotent on its own vertices") {
    Substream s(9, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts;
        for (int i = 0; i < 40; ++i) pts.push_back({s.next_unit(), s.next_unit()});
        const ConvexPolygon h = convex_hull(pts);
        const ConvexPolygon again = convex_hull(h.vertices());
        REQUIRE(h.size() == again.size());
        for (std::size_t i = 0; i < h.size(); ++i) {
            CHECK(h.vertices()[i].x == again.vertices()[i].x);
            CHECK(h.vertices()[i].y == again.vertices()[i].y);
        }
    }
}

TEST_CASE("scale") {
    const ConvexPolygon half = scale(unit_square(), 0.5);
    CHECK(half.support({1, 0}) == 0.5);
    CHECK(half.support({0, 1}) == 0.5);

    CHECK(scale(unit_square(), 0.0).is_point());

    const std::vector<Point> seg{{0, 0}, {1, 0}};
    const double inv_e = std::exp(-1.0);
    const ConvexPolygon scaled = scale(convex_hull(seg), inv_e);
    CHECK(scaled.is_segment());
    CHECK(scaled.support({1, 0}) == doctest::Approx(0.36787944117144233).epsilon(1e-15));

    CHECK_THROWS_AS(scale(unit_square(), -0.1), std::invalid_argument);
}

TEST_CASE("minkowski sum basics") {
    const ConvexPolygon h = convex_hull(std::vector<Point>{{0, 0}, {2, 0}});
    const ConvexPolygon v = convex_hull(std::vector<Point>{{0, 0}, {0, 1}});
    const ConvexPolygon rect = minkowski_sum(h, v);
    CHECK(rect.size() == 4);
    CHECK(rect.area() == doctest::Approx(2.0));

    const ConvexPolygon origin = convex_hull(std::vector<Point>{{0, 0}});
    CHECK(same_polygon(minkowski_sum(unit_square(), origin), unit_square(), 0.0));
}

TEST_CASE("minkowski sum properties on random polygons") {
    Substream s(10, 0);
    auto random_poly = [&](int n) {
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back({s.next_unit(), s.next_unit()});
        return convex_hull(pts);
    };
    for (int trial = 0; trial < 30; ++trial) {
        const ConvexPolygon a = random_poly(8);
        const ConvexPolygon b = random_poly(8);
        const ConvexPolygon ab = minkowski_sum(a, b);
        // Support functions add.
        for (int d = 0; d < 16; ++d) {
            const double th = s.next_unit() * 6.283185307179586;
            const Point dir{std::cos(th), std::sin(th)};
            CHECK(ab.support(dir) ==
                  doctest::Approx(a.support(dir) + b.support(dir)).epsilon(1e-12));
        }
        // Commutative.
        CHECK(same_polygon(ab, minkowski_sum(b, a), 1e-12));
        // Scaling distributes.
        const double c = s.next_unit();
        CHECK(same_polygon(scale(ab, c), minkowski_sum(scale(a, c), scale(b, c)), 1e-12));
    }
}

TEST_CASE("containment") {
    const ConvexPolygon sq = unit_square();
    CHECK(contains(sq, scale(sq, 0.5), 0.0));
    CHECK(contains(sq, sq, 0.0));
    CHECK_FALSE(contains(scale(sq, 0.5), sq, 0.0));
    // Tolerance admits a slightly protruding polygon.
    const ConvexPolygon bigger = scale(sq, 1.0 + 1e-7);
    CHECK_FALSE(contains(sq, bigger, 0.0));
    CHECK(contains(sq, bigger, 1e-6));
}

TEST_CASE("hausdorff distance") {
    const ConvexPolygon sq = unit_square();
    CHECK(hausdorff_distance(sq, sq) == 0.0);

    const ConvexPolygon half = scale(sq, 0.5);
    CHECK(hausdorff_distance(sq, half) ==
          doctest::Approx(0.70710678118654757).epsilon(1e-9));

    std::vector<Point> shifted;
    for (const Point& p : sq.vertices()) shifted.push_back({p.x + 0.3, p.y});
    CHECK(hausdorff_distance(sq, convex_hull(shifted)) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("degenerate polygons participate in sums") {
    const ConvexPolygon pt = convex_hull(std::vector<Point>{{0.25, 0.5}});
    const ConvexPolygon sq = unit_square();
    const ConvexPolygon shifted = minkowski_sum(sq, pt);
    CHECK(shifted.support({1, 0}) == doctest::Approx(1.25));
    CHECK(shifted.support({0, 1}) == doctest::Approx(1.5));
    CHECK(distance_to_polygon(shifted, {0.25, 0.5}) == 0.0);
    CHECK(distance_to_polygon(shifted, {0.0, 0.0}) > 0.0);
}
