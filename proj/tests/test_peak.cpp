#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "netstab/peak.hpp"
#include "netstab/rng.hpp"

using namespace netstab;

namespace {

// Closed-form cell probabilities of the fixed-codebook MAC with R0 = 1,
// budgets (1,1) and unit-mean exponential gains. Thresholds sit at 1 and 2,
// so the five cells are products of exponential CDF differences.
struct FixedCodebookOracle {
    double e1 = std::exp(-1.0);
    double e2 = std::exp(-2.0);
    double p_none = (1 - e1) * (1 - e1);
    double p_user1 = e1 * (1 - e1);
    double p_user2 = e1 * (1 - e1);
    double p_single_only = (e1 - e2) * (e1 - e2);
    double p_full = e2 - (e1 - e2) * (e1 - e2);

    std::vector<Point> pentagon() const {
        const double y2 = p_user2 + p_full;
        return {{0, 0}, {e1, 0}, {e1, y2}, {y2, e1}, {0, e1}};
    }
};

bool has_rate(const std::vector<RateVector>& set, double r1, double r2) {
    return std::find(set.begin(), set.end(), RateVector{r1, r2}) != set.end();
}

const PartitionCell* find_cell(const std::vector<PartitionCell>& cells,
                               std::size_t n_rates, bool with_simultaneous) {
    for (const PartitionCell& c : cells) {
        if (c.rate_set.size() != n_rates) continue;
        bool simultaneous = false;
        for (const RateVector& r : c.rate_set)
            if (r.r1 > 0 && r.r2 > 0) simultaneous = true;
        if (simultaneous == with_simultaneous) return &c;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("mac supported set examples") {
    const RateSet r = RateSet::fixed(1.0);
    const PowerAllocation budgets{1.0, 1.0};

    const auto weak = mac_supported_set({0.5, 0.5}, budgets, r, r);
    REQUIRE(weak.size() == 1);
    CHECK(has_rate(weak, 0, 0));

    const auto mid = mac_supported_set({1.5, 1.5}, budgets, r, r);
    REQUIRE(mid.size() == 3);
    CHECK(has_rate(mid, 1, 0));
    CHECK(has_rate(mid, 0, 1));
    CHECK_FALSE(has_rate(mid, 1, 1));

    const RateSet r15 = RateSet::fixed(1.5);
    const auto rich = mac_supported_set({1.0, 1.0}, {10.0, 10.0}, r15, r15);
    CHECK(has_rate(rich, 1.5, 1.5));
}

TEST_CASE("mac partition matches the closed forms") {
    const FixedCodebookOracle oracle;
    const RateSet r = RateSet::fixed(1.0);
    const ChannelModel model;
    const auto cells = mac_partition(r, r, {1.0, 1.0}, model);
    REQUIRE(cells.size() == 5);

    double total = 0.0;
    for (const auto& c : cells) total += c.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const PartitionCell* none = find_cell(cells, 1, false);
    const PartitionCell* single_only = find_cell(cells, 3, false);
    const PartitionCell* full = find_cell(cells, 4, true);
    REQUIRE(none);
    REQUIRE(single_only);
    REQUIRE(full);
    CHECK(none->probability == doctest::Approx(oracle.p_none).epsilon(1e-9));
    CHECK(single_only->probability ==
          doctest::Approx(oracle.p_single_only).epsilon(1e-9));
    CHECK(full->probability == doctest::Approx(oracle.p_full).epsilon(1e-9));
    for (const PartitionCell& c : cells) {
        if (c.rate_set.size() == 2) {
            CHECK(c.probability == doctest::Approx(oracle.p_user1).epsilon(1e-9));
            CHECK_FALSE(c.rects.empty());
        }
    }
}

TEST_CASE("mac partition with zero budgets is a single silent cell") {
    const RateSet r = RateSet::fixed(1.0);
    const auto cells = mac_partition(r, r, {0.0, 0.0}, ChannelModel{});
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].rate_set.size() == 1);
    CHECK(cells[0].probability == doctest::Approx(1.0));
    CHECK(stability_region_peak(cells).is_point());
}

TEST_CASE("mac partition agrees with Monte Carlo classification") {
    const ChannelModel model;
    // Awkward budgets exercise the threshold arithmetic away from exact
    // floating-point divisions; a misclassified box would shift a cell mass
    // by far more than the Monte Carlo noise.
    const struct {
        RateSet rates;
        PowerAllocation budgets;
    } configs[] = {
        {RateSet::fixed(1.0), {1.0, 1.0}},
        {RateSet::fixed(1.0), {0.3, 1.7}},
        {RateSet({0.6, 1.3}), {0.7, 1.1}},
    };
    for (const auto& cfg : configs) {
        const auto analytic = mac_partition(cfg.rates, cfg.rates, cfg.budgets, model);
        double total = 0.0;
        for (const auto& c : analytic) total += c.probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        const auto mc =
            mac_partition_mc(cfg.rates, cfg.rates, cfg.budgets, model, {100'000, 77, true});
        REQUIRE(mc.size() == analytic.size());
        for (const PartitionCell& a : analytic) {
            bool found = false;
            for (const PartitionCell& m : mc) {
                if (m.rate_set == a.rate_set) {
                    found = true;
                    CHECK(std::abs(m.probability - a.probability) <=
                          5.0 * std::max(m.std_error, 1e-9));
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("bc supported set examples") {
    const RateSet r = RateSet::fixed(1.0);
    const auto full = bc_supported_set({2.0, 1.0}, 2.0, r, r);
    CHECK(full.size() == 4);

    const auto none = bc_supported_set({0.4, 0.3}, 2.0, r, r);
    CHECK(none.size() == 1);

    const auto everything = bc_supported_set({0.9, 1.7}, 1e18, r, r);
    CHECK(everything.size() == 4);
}

TEST_CASE("supported sets grow with the gains") {
    const RateSet r({0.6, 1.3});
    Substream s(21, 0);
    for (int i = 0; i < 300; ++i) {
        const ChannelFadePower chi{s.next_exponential(1.0), s.next_exponential(1.0)};
        const ChannelFadePower up{chi.chi1 * (1 + s.next_unit()),
                                  chi.chi2 * (1 + s.next_unit())};
        const auto mac_lo = mac_supported_set(chi, {1.0, 1.5}, r, r);
        const auto mac_hi = mac_supported_set(up, {1.0, 1.5}, r, r);
        for (const RateVector& rv : mac_lo) CHECK(has_rate(mac_hi, rv.r1, rv.r2));
        const auto bc_lo = bc_supported_set(chi, 2.0, r, r);
        const auto bc_hi = bc_supported_set(up, 2.0, r, r);
        for (const RateVector& rv : bc_lo) CHECK(has_rate(bc_hi, rv.r1, rv.r2));
    }
}

TEST_CASE("bc membership is symmetric under the joint swap") {
    const RateSet r({0.6, 1.3});
    Substream s(22, 0);
    for (int i = 0; i < 300; ++i) {
        const ChannelFadePower chi{s.next_exponential(1.0), s.next_exponential(1.0)};
        const auto fwd = bc_supported_set(chi, 2.0, r, r);
        const auto swp = bc_supported_set({chi.chi2, chi.chi1}, 2.0, r, r);
        REQUIRE(fwd.size() == swp.size());
        for (const RateVector& rv : fwd) CHECK(has_rate(swp, rv.r2, rv.r1));
    }
}

TEST_CASE("bc chi2 thresholds reproduce the classifier") {
    const RateSet rs({0.6, 1.3});
    Substream s(23, 0);
    for (int i = 0; i < 500; ++i) {
        const ChannelFadePower chi{s.next_exponential(1.0), s.next_exponential(1.0)};
        const double budget = 0.5 + 3.0 * s.next_unit();
        const auto supported = bc_supported_set(chi, budget, rs, rs);
        for (double r1 : rs.values()) {
            for (double r2 : rs.values()) {
                const double tau = bc_chi2_threshold({r1, r2}, chi.chi1, budget);
                CHECK(has_rate(supported, r1, r2) == (chi.chi2 >= tau));
            }
        }
    }
}

TEST_CASE("bc partition Monte Carlo") {
    const RateSet r = RateSet::fixed(1.0);
    const ChannelModel model;
    const auto cells = bc_partition_mc(r, r, 2.0, model, {100'000, 99, true});

    double total = 0.0;
    for (const auto& c : cells) total += c.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Exchangeable gains: the one-sided cells have equal mass.
    const PartitionCell* u1 = nullptr;
    const PartitionCell* u2 = nullptr;
    for (const auto& c : cells) {
        if (c.rate_set.size() == 2 && has_rate(c.rate_set, 1, 0)) u1 = &c;
        if (c.rate_set.size() == 2 && has_rate(c.rate_set, 0, 1)) u2 = &c;
    }
    REQUIRE(u1);
    REQUIRE(u2);
    CHECK(std::abs(u1->probability - u2->probability) <=
          3.0 * std::hypot(u1->std_error, u2->std_error));

    CHECK_THROWS_AS(bc_partition_mc(r, r, 2.0, model, {100, 1, true}),
                    std::invalid_argument);
}

TEST_CASE("bc partition quadrature backend") {
    const RateSet r = RateSet::fixed(1.0);
    const ChannelModel model;
    const double budget = 2.0;
    const auto quad = bc_partition_quadrature(r, r, budget, model, 512);

    double total = 0.0;
    for (const auto& c : quad) total += c.probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-7));

    // The single-user-threshold cells have closed forms.
    const double q = std::exp(-required_snr(1.0) / budget);  // Pr(chi >= snr/budget)
    for (const auto& c : quad) {
        if (c.rate_set.size() == 1)
            CHECK(c.probability == doctest::Approx((1 - q) * (1 - q)).epsilon(1e-7));
        if (c.rate_set.size() == 2)
            CHECK(c.probability == doctest::Approx(q * (1 - q)).epsilon(1e-7));
    }

    // And the nonlinear cells agree with Monte Carlo within 4 sigma.
    const auto mc = bc_partition_mc(r, r, budget, model, {200'000, 7, true});
    for (const auto& c : quad) {
        for (const auto& m : mc) {
            if (m.rate_set == c.rate_set)
                CHECK(std::abs(m.probability - c.probability) <= 4.0 * m.std_error);
        }
    }
}

TEST_CASE("stability region is the weighted sum of cell hulls") {
    const FixedCodebookOracle oracle;
    const RateSet r = RateSet::fixed(1.0);
    const auto cells = mac_partition(r, r, {1.0, 1.0}, ChannelModel{});
    const ConvexPolygon region = stability_region_peak(cells);

    const ConvexPolygon expected = convex_hull(oracle.pentagon());
    REQUIRE(region.size() == 5);
    CHECK(hausdorff_distance(region, expected) <= 1e-12);

    // Exhaustive vertex check: support functions agree in every direction.
    for (int d = 0; d < 720; ++d) {
        const double th = d * 3.141592653589793 / 360.0;
        const Point dir{std::cos(th), std::sin(th)};
        CHECK(region.support(dir) == doctest::Approx(expected.support(dir)).epsilon(1e-12));
    }
}

TEST_CASE("probabilities must sum to one") {
    PartitionCell half;
    half.rate_set = {{0, 0}};
    half.probability = 0.5;
    CHECK_THROWS_AS(stability_region_peak({half}), std::invalid_argument);
}

TEST_CASE("stationary scheduler achieves the sum-rate corner") {
    const FixedCodebookOracle oracle;
    const RateSet r = RateSet::fixed(1.0);
    const SchedulerStats st = simulate_peak_scheduler(
        NetworkKind::mac, r, r, {1.0, 1.0}, ChannelModel{}, {1.0, 1.0}, {200'000, 5, true});
    const double want_r1 = oracle.e1;
    const double want_r2 = oracle.p_user2 + oracle.p_full;
    CHECK(std::abs(st.r1_mean - want_r1) <= 5.0 * st.r1_se);
    CHECK(std::abs(st.r2_mean - want_r2) <= 5.0 * st.r2_se);
}

TEST_CASE("scheduler mean matches the region support point in other directions") {
    // The long-run average of the per-slot argmax equals the region's support
    // point for the same direction (cell argmaxes add up across the sum).
    const RateSet r = RateSet::fixed(1.0);
    const auto cells = mac_partition(r, r, {1.0, 1.0}, ChannelModel{});
    const ConvexPolygon region = stability_region_peak(cells);
    const Point dir{2.0, 1.0};  // unique argmax in every cell
    const Point expect = region.support_point(dir);
    const SchedulerStats st = simulate_peak_scheduler(NetworkKind::mac, r, r, {1.0, 1.0},
                                                      ChannelModel{}, dir,
                                                      {200'000, 6, true});
    CHECK(std::abs(st.r1_mean - expect.x) <= 5.0 * st.r1_se);
    CHECK(std::abs(st.r2_mean - expect.y) <= 5.0 * st.r2_se);
}

TEST_CASE("bc partition with zero budget is a single silent cell") {
    const RateSet r = RateSet::fixed(1.0);
    const auto cells = bc_partition_mc(r, r, 0.0, ChannelModel{}, {10'000, 3, true});
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].rate_set.size() == 1);
    CHECK(cells[0].probability == 1.0);
}
