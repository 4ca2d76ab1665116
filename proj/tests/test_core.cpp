#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "netstab/core.hpp"
#include "netstab/math_util.hpp"
#include "netstab/rng.hpp"

using namespace netstab;

TEST_CASE("shannon_rate basics") {
    CHECK(shannon_rate(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(shannon_rate(0.0, 5.0) == 0.0);
    CHECK(shannon_rate(1.0, 10.0) == doctest::Approx(3.4594316186372973).epsilon(1e-14));
    CHECK_THROWS_AS(shannon_rate(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(shannon_rate(1.0, -1.0), std::invalid_argument);

    // Monotone nondecreasing in both arguments.
    Substream s(1, 0);
    for (int i = 0; i < 200; ++i) {
        const double chi = s.next_exponential(1.0);
        const double p = s.next_exponential(1.0);
        CHECK(shannon_rate(chi * 1.5, p) >= shannon_rate(chi, p));
        CHECK(shannon_rate(chi, p * 1.5) >= shannon_rate(chi, p));
    }
}

TEST_CASE("rate set validation") {
    const RateSet r({1.0, 0.5});
    REQUIRE(r.size() == 3);  // zero inserted
    CHECK(r.values()[0] == 0.0);
    CHECK(r.values()[1] == 0.5);
    CHECK(r.values()[2] == 1.0);
    CHECK_THROWS_AS(RateSet({-0.5}), std::invalid_argument);
    CHECK(RateSet::fixed(2.0).max_rate() == 2.0);
}

TEST_CASE("mac minimum powers") {
    const PowerAllocation a =
        mac_min_powers({1.0, 1.0}, DecodeOrder::user1_first, {1.0, 1.0});
    CHECK(a.p1 == doctest::Approx(2.0));
    CHECK(a.p2 == doctest::Approx(1.0));

    const PowerAllocation zero =
        mac_min_powers({0.0, 0.0}, DecodeOrder::user2_first, {0.3, 7.0});
    CHECK(zero.p1 == 0.0);
    CHECK(zero.p2 == 0.0);

    const PowerAllocation b =
        mac_min_powers({1.5, 1.5}, DecodeOrder::user2_first, {1.0, 1.0});
    CHECK(b.p1 == doctest::Approx(1.8284271247461903).epsilon(1e-14));
    CHECK(b.p2 == doctest::Approx(5.171572875253811).epsilon(1e-14));

    // Positive rate on a dead link is infeasible, not an error.
    const PowerAllocation inf =
        mac_min_powers({1.0, 0.0}, DecodeOrder::user1_first, {0.0, 1.0});
    CHECK(std::isinf(inf.p1));
    CHECK(inf.p2 == 0.0);
}

TEST_CASE("mac minimum powers decrease when gains improve") {
    Substream s(2, 0);
    for (int i = 0; i < 500; ++i) {
        const ChannelFadePower chi{s.next_exponential(1.0), s.next_exponential(1.0)};
        const ChannelFadePower better{chi.chi1 * (1.0 + s.next_unit()),
                                      chi.chi2 * (1.0 + s.next_unit())};
        const RateVector r{s.next_unit() * 2.0, s.next_unit() * 2.0};
        for (DecodeOrder o : {DecodeOrder::user1_first, DecodeOrder::user2_first}) {
            const PowerAllocation p = mac_min_powers(r, o, chi);
            const PowerAllocation q = mac_min_powers(r, o, better);
            CHECK(q.p1 <= p.p1);
            CHECK(q.p2 <= p.p2);
        }
        CHECK(bc_min_power(r, better) <= bc_min_power(r, chi));
    }
}

TEST_CASE("feasibility is reconstructed from minimum powers") {
    Substream s(3, 0);
    for (int i = 0; i < 500; ++i) {
        const ChannelFadePower chi{0.05 + s.next_exponential(1.0),
                                   0.05 + s.next_exponential(1.0)};
        const RateVector r{s.next_unit() * 2.0, s.next_unit() * 2.0};
        for (DecodeOrder o : {DecodeOrder::user1_first, DecodeOrder::user2_first}) {
            const PowerAllocation p = mac_min_powers(r, o, chi);
            const double s1 = chi.chi1 * p.p1;
            const double s2 = chi.chi2 * p.p2;
            if (o == DecodeOrder::user1_first) {
                CHECK(std::log2(1.0 + s1 / (1.0 + s2)) >= r.r1 - 1e-9);
                CHECK(std::log2(1.0 + s2) >= r.r2 - 1e-9);
            } else {
                CHECK(std::log2(1.0 + s2 / (1.0 + s1)) >= r.r2 - 1e-9);
                CHECK(std::log2(1.0 + s1) >= r.r1 - 1e-9);
            }
        }
    }
}

TEST_CASE("bc minimum power") {
    CHECK(bc_min_power({1.0, 1.0}, {2.0, 1.0}) == doctest::Approx(2.0));
    CHECK(bc_min_power({0.0, 0.0}, {0.7, 0.1}) == 0.0);
    CHECK(bc_min_power({1.0, 1.0}, {1.0, 2.0}) == doctest::Approx(2.0));

    // Continuous across the equal-gain crossing; there the total collapses to
    // the sum-rate SNR over the common gain.
    Substream s(4, 0);
    for (int i = 0; i < 200; ++i) {
        const double c = 0.05 + s.next_exponential(1.0);
        const RateVector r{s.next_unit() * 2.0, s.next_unit() * 2.0};
        const double at = bc_min_power(r, {c, c});
        CHECK(at == doctest::Approx(required_snr(r.r1 + r.r2) / c).epsilon(1e-12));
        const double eps = 1e-9 * c;
        CHECK(bc_min_power(r, {c + eps, c}) == doctest::Approx(at).epsilon(1e-6));
        CHECK(bc_min_power(r, {c, c + eps}) == doctest::Approx(at).epsilon(1e-6));
    }
}

TEST_CASE("bc emulation split adds up and matches the decode order") {
    Substream s(5, 0);
    for (int i = 0; i < 500; ++i) {
        const ChannelFadePower chi{0.02 + s.next_exponential(1.0),
                                   0.02 + s.next_exponential(1.0)};
        const RateVector r{s.next_unit() * 2.0, s.next_unit() * 2.0};
        const PowerAllocation split = bc_emulation_split(r, chi);
        CHECK(split.p1 + split.p2 == bc_min_power(r, chi));  // same arithmetic path
        const DecodeOrder order = chi.chi1 >= chi.chi2 ? DecodeOrder::user1_first
                                                       : DecodeOrder::user2_first;
        const PowerAllocation mac = mac_min_powers(r, order, chi);
        CHECK(split.p1 == mac.p1);
        CHECK(split.p2 == mac.p2);
    }
}

TEST_CASE("fixed power allocation is stricter than a peak budget") {
    // At chi = (1,1) the pair (1.5, 1.5) needs (1.83, 5.17) under one order,
    // which fits a peak budget of (10, 10) but fails when both users are
    // forced to transmit at exactly (10, 10).
    const ChannelFadePower chi{1.0, 1.0};
    const RateVector r{1.5, 1.5};
    const PowerAllocation fixed{10.0, 10.0};
    CHECK_FALSE(mac_feasible_at_powers(r, chi, fixed, DecodeOrder::user1_first));
    CHECK_FALSE(mac_feasible_at_powers(r, chi, fixed, DecodeOrder::user2_first));
    const PowerAllocation min2 = mac_min_powers(r, DecodeOrder::user2_first, chi);
    CHECK(min2.p1 <= 10.0);
    CHECK(min2.p2 <= 10.0);
}

TEST_CASE("exponential integral") {
    // Reference values from the defining integral on a fine Simpson grid.
    auto simpson_e1 = [](double x) {
        const double hi = x + 60.0;
        const int n = 200'000;
        const double h = (hi - x) / n;
        double acc = std::exp(-x) / x + std::exp(-hi) / hi;
        for (int i = 1; i < n; ++i) {
            const double t = x + i * h;
            acc += (i % 2 == 1 ? 4.0 : 2.0) * std::exp(-t) / t;
        }
        return acc * h / 3.0;
    };
    for (double x : {0.05, 0.3, 1.0, 2.5, 10.0}) {
        CHECK(expint_e1(x) == doctest::Approx(simpson_e1(x)).epsilon(1e-9));
    }
    CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552029).epsilon(1e-12));
    CHECK_THROWS_AS(expint_e1(0.0), std::invalid_argument);
}

TEST_CASE("snr helpers") {
    CHECK(required_snr(1.0) == 1.0);
    CHECK(required_snr(2.0) == 3.0);
    CHECK(rate_snr_ratio(1.0) == 1.0);
    CHECK(rate_snr_ratio(2.0) == doctest::Approx(2.0 / 3.0));
}
