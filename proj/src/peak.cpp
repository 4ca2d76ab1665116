#include "netstab/peak.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "netstab/mc.hpp"

namespace netstab {

namespace {

// A supported set is a bitmask over the rate grid, index i1 * n2 + i2.
// Bit 0 is the (0,0) pair and is always set.
using SetMask = std::uint64_t;

struct RateGrid {
    const std::vector<double>& r1;
    const std::vector<double>& r2;

    RateGrid(const RateSet& a, const RateSet& b) : r1(a.values()), r2(b.values()) {
        if (r1.size() * r2.size() > 64)
            throw std::invalid_argument("rate grid larger than 64 pairs");
    }
    std::size_t pairs() const { return r1.size() * r2.size(); }
    RateVector pair(std::size_t i) const {
        return {r1[i / r2.size()], r2[i % r2.size()]};
    }
};

bool mac_pair_supported(const RateVector& r, const ChannelFadePower& chi,
                        const PowerAllocation& budgets) {
    for (DecodeOrder order : {DecodeOrder::user1_first, DecodeOrder::user2_first}) {
        const PowerAllocation p = mac_min_powers(r, order, chi);
        if (p.p1 <= budgets.p1 && p.p2 <= budgets.p2) return true;
    }
    return false;
}

bool bc_pair_supported(const RateVector& r, const ChannelFadePower& chi, double budget) {
    // Single-user decode constraint (implied by the total-power row, kept
    // explicit to mirror the region description).
    const double strong = std::max(chi.chi1, chi.chi2);
    const double own = chi.chi1 >= chi.chi2 ? r.r1 : r.r2;
    if (own > 0.0) {
        if (strong <= 0.0) return false;
        if (required_snr(own) / strong > budget) return false;
    }
    return bc_min_power(r, chi) <= budget;
}

SetMask mac_mask(const RateGrid& grid, const ChannelFadePower& chi,
                 const PowerAllocation& budgets) {
    SetMask m = 1;  // (0,0)
    for (std::size_t i = 1; i < grid.pairs(); ++i)
        if (mac_pair_supported(grid.pair(i), chi, budgets)) m |= SetMask{1} << i;
    return m;
}

SetMask bc_mask(const RateGrid& grid, const ChannelFadePower& chi, double budget) {
    SetMask m = 1;
    for (std::size_t i = 1; i < grid.pairs(); ++i)
        if (bc_pair_supported(grid.pair(i), chi, budget)) m |= SetMask{1} << i;
    return m;
}

std::vector<RateVector> mask_to_rates(const RateGrid& grid, SetMask m) {
    std::vector<RateVector> out;
    for (std::size_t i = 0; i < grid.pairs(); ++i)
        if (m & (SetMask{1} << i)) out.push_back(grid.pair(i));
    return out;
}

// Deterministic merge-able census of supported-set masks.
struct MaskCounts {
    std::map<SetMask, std::uint64_t> counts;
    void merge(const MaskCounts& o) {
        for (const auto& [mask, n] : o.counts) counts[mask] += n;
    }
};

template <typename Classifier>
std::vector<PartitionCell> partition_by_mc(const RateGrid& grid, const ChannelModel& model,
                                           const McOptions& mc, Classifier&& classify) {
    if (mc.samples < 10'000)
        throw std::invalid_argument("partition: need at least 1e4 samples");
    const MaskCounts census = mc_run_blocked<MaskCounts>(
        mc.samples, mc.seed,
        [&](std::uint64_t, Substream& s, MaskCounts& p) {
            const ChannelFadePower chi = model.sample(s);
            ++p.counts[classify(chi)];
        },
        mc.parallel);

    std::vector<PartitionCell> cells;
    const double n = static_cast<double>(mc.samples);
    for (const auto& [mask, count] : census.counts) {
        PartitionCell cell;
        cell.rate_set = mask_to_rates(grid, mask);
        cell.probability = static_cast<double>(count) / n;
        cell.std_error = std::sqrt(cell.probability * (1.0 - cell.probability) / n);
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace

std::vector<RateVector> mac_supported_set(const ChannelFadePower& chi,
                                          const PowerAllocation& budgets,
                                          const RateSet& rates1, const RateSet& rates2) {
    const RateGrid grid(rates1, rates2);
    return mask_to_rates(grid, mac_mask(grid, chi, budgets));
}

std::vector<RateVector> bc_supported_set(const ChannelFadePower& chi, double budget,
                                         const RateSet& rates1, const RateSet& rates2) {
    const RateGrid grid(rates1, rates2);
    return mask_to_rates(grid, bc_mask(grid, chi, budget));
}

std::vector<PartitionCell> mac_partition(const RateSet& rates1, const RateSet& rates2,
                                         const PowerAllocation& budgets,
                                         const ChannelModel& model) {
    const RateGrid grid(rates1, rates2);

    // The support condition for every (pair, order) is a pair of one-sided
    // thresholds on chi1 and chi2, so the supported set is constant on the
    // boxes of the threshold grid.
    std::vector<double> t1{0.0}, t2{0.0};
    for (std::size_t i = 1; i < grid.pairs(); ++i) {
        const RateVector r = grid.pair(i);
        for (DecodeOrder order : {DecodeOrder::user1_first, DecodeOrder::user2_first}) {
            const PowerAllocation p =
                mac_min_powers(r, order, ChannelFadePower{1.0, 1.0});
            if (r.r1 > 0.0 && budgets.p1 > 0.0) t1.push_back(p.p1 / budgets.p1);
            if (r.r2 > 0.0 && budgets.p2 > 0.0) t2.push_back(p.p2 / budgets.p2);
        }
    }
    auto tidy = [](std::vector<double>& t) {
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
    };
    tidy(t1);
    tidy(t2);

    std::map<SetMask, PartitionCell> cells;
    const double inf = std::numeric_limits<double>::infinity();
    // Classify at an interior point of each box: evaluating exactly on a
    // threshold would hinge on a 1-ulp round trip of beta/(beta/budget).
    // Boundary ties go to the larger set, which is what the half-open
    // [threshold, next) boxes encode.
    auto inside = [inf](double lo, double hi) {
        return hi == inf ? 2.0 * lo + 1.0 : 0.5 * (lo + hi);
    };
    for (std::size_t j = 0; j < t1.size(); ++j) {
        const double x0 = t1[j];
        const double x1 = j + 1 < t1.size() ? t1[j + 1] : inf;
        for (std::size_t k = 0; k < t2.size(); ++k) {
            const double y0 = t2[k];
            const double y1 = k + 1 < t2.size() ? t2[k + 1] : inf;
            const ChannelFadePower probe{inside(x0, x1), inside(y0, y1)};
            const SetMask mask = mac_mask(grid, probe, budgets);
            const double px = (x1 == inf ? 1.0 : model.cdf1(x1)) - model.cdf1(x0);
            const double py = (y1 == inf ? 1.0 : model.cdf2(y1)) - model.cdf2(y0);
            PartitionCell& cell = cells[mask];
            cell.probability += px * py;
            cell.rects.push_back({x0, x1, y0, y1});
        }
    }

    std::vector<PartitionCell> out;
    for (auto& [mask, cell] : cells) {
        cell.rate_set = mask_to_rates(grid, mask);
        out.push_back(std::move(cell));
    }
    return out;
}

std::vector<PartitionCell> mac_partition_mc(const RateSet& rates1, const RateSet& rates2,
                                            const PowerAllocation& budgets,
                                            const ChannelModel& model, const McOptions& mc) {
    const RateGrid grid(rates1, rates2);
    return partition_by_mc(grid, model, mc, [&](const ChannelFadePower& chi) {
        return mac_mask(grid, chi, budgets);
    });
}

std::vector<PartitionCell> bc_partition_mc(const RateSet& rates1, const RateSet& rates2,
                                           double budget, const ChannelModel& model,
                                           const McOptions& mc) {
    const RateGrid grid(rates1, rates2);
    return partition_by_mc(grid, model, mc, [&](const ChannelFadePower& chi) {
        return bc_mask(grid, chi, budget);
    });
}

double bc_chi2_threshold(const RateVector& r, double chi1, double budget) {
    const double inf = std::numeric_limits<double>::infinity();
    if (r.r1 <= 0.0 && r.r2 <= 0.0) return 0.0;
    if (budget <= 0.0) return inf;
    const double g1 = required_snr(r.r1);
    const double g2 = required_snr(r.r2);
    if (r.r2 <= 0.0)  // power is g1/chi1 on both branches
        return (chi1 > 0.0 && g1 / chi1 <= budget) ? 0.0 : inf;
    if (r.r1 <= 0.0) return g2 / budget;
    if (chi1 <= 0.0) return inf;
    // Total power is continuous and decreasing in chi2; its value where the
    // branches meet (chi2 == chi1) is (2^(r1+r2)-1)/chi1.
    const double p_cross = required_snr(r.r1 + r.r2) / chi1;
    if (p_cross <= budget) {
        return g2 / (budget - g1 * std::exp2(r.r2) / chi1);  // weaker-user-2 branch
    }
    const double floor_power = g1 / chi1;  // chi2 -> infinity limit
    if (floor_power >= budget) return inf;
    return g2 * std::exp2(r.r1) / (budget - floor_power);
}

std::vector<PartitionCell> bc_partition_quadrature(const RateSet& rates1,
                                                   const RateSet& rates2, double budget,
                                                   const ChannelModel& model, int panels) {
    const RateGrid grid(rates1, rates2);

    // 16-point Gauss-Legendre per panel over the chi1 quantile q in (0,1).
    static constexpr double node[8] = {0.0950125098376374, 0.2816035507792589,
                                       0.4580167776572274, 0.6178762444026438,
                                       0.7554044083550030, 0.8656312023878318,
                                       0.9445750230732326, 0.9894009349916499};
    static constexpr double weight[8] = {0.1894506104550685, 0.1826034150449236,
                                         0.1691565193950025, 0.1495959888165767,
                                         0.1246289712555339, 0.0951585116824928,
                                         0.0622535239386479, 0.0271524594117541};

    std::map<SetMask, double> mass;
    std::vector<std::pair<double, std::size_t>> thresh(grid.pairs());
    auto accumulate_slice = [&](double q, double w) {
        const double chi1 = model.quantile1(q);
        for (std::size_t i = 0; i < grid.pairs(); ++i)
            thresh[i] = {bc_chi2_threshold(grid.pair(i), chi1, budget), i};
        std::sort(thresh.begin(), thresh.end());

        // Walk chi2 upward: pairs switch on at their thresholds.
        SetMask mask = 0;
        std::size_t i = 0;
        while (i < thresh.size() && thresh[i].first <= 0.0)
            mask |= SetMask{1} << thresh[i++].second;
        double lo = 0.0;
        while (i < thresh.size() && std::isfinite(thresh[i].first)) {
            const double hi = thresh[i].first;
            if (hi > lo) mass[mask] += w * (model.cdf2(hi) - model.cdf2(lo));
            lo = hi;
            while (i < thresh.size() && thresh[i].first == lo)
                mask |= SetMask{1} << thresh[i++].second;
        }
        mass[mask] += w * (1.0 - model.cdf2(lo));
    };

    // The slice weights jump where a pair's threshold flips between 0 and
    // infinity (single-user decodability) and kink where the branch of the
    // total-power formula changes; both happen at known chi1 values. Split
    // the outer integral there so every segment is smooth enough for GL.
    std::vector<double> breaks{0.0, 1.0};
    auto add_break = [&](double chi1) {
        if (chi1 <= 0.0 || !std::isfinite(chi1)) return;
        const double q = model.cdf1(chi1);
        if (q > 1e-12 && q < 1.0 - 1e-12) breaks.push_back(q);
    };
    if (budget > 0.0) {
        for (std::size_t i = 1; i < grid.pairs(); ++i) {
            const RateVector r = grid.pair(i);
            if (r.r1 > 0.0) add_break(required_snr(r.r1) / budget);
            if (r.r1 > 0.0 && r.r2 > 0.0) add_break(required_snr(r.r1 + r.r2) / budget);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
        const double lo = breaks[seg];
        const double hi = breaks[seg + 1];
        const int seg_panels =
            std::max(16, static_cast<int>(std::lround(panels * (hi - lo))));
        const double h = (hi - lo) / seg_panels;
        for (int p = 0; p < seg_panels; ++p) {
            const double mid = lo + (p + 0.5) * h;
            for (int i = 0; i < 8; ++i) {
                accumulate_slice(mid + 0.5 * h * node[i], 0.5 * h * weight[i]);
                accumulate_slice(mid - 0.5 * h * node[i], 0.5 * h * weight[i]);
            }
        }
    }

    std::vector<PartitionCell> cells;
    for (const auto& [mask, prob] : mass) {
        PartitionCell cell;
        cell.rate_set = mask_to_rates(grid, mask);
        cell.probability = prob;
        cells.push_back(std::move(cell));
    }
    return cells;
}

ConvexPolygon stability_region_peak(const std::vector<PartitionCell>& cells) {
    double total = 0.0;
    for (const PartitionCell& c : cells) total += c.probability;
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("stability_region_peak: probabilities must sum to 1");

    ConvexPolygon region = convex_hull(std::vector<Point>{{0.0, 0.0}});
    for (const PartitionCell& c : cells) {
        std::vector<Point> pts;
        pts.reserve(c.rate_set.size());
        for (const RateVector& r : c.rate_set) pts.push_back({r.r1, r.r2});
        region = minkowski_sum(region, scale(convex_hull(pts), c.probability));
    }
    return region;
}

SchedulerStats simulate_peak_scheduler(NetworkKind kind, const RateSet& rates1,
                                       const RateSet& rates2,
                                       const std::vector<double>& budgets,
                                       const ChannelModel& model, Point direction,
                                       const McOptions& mc) {
    const RateGrid grid(rates1, rates2);
    const bool is_mac = kind == NetworkKind::mac;
    if (is_mac ? budgets.size() != 2 : budgets.size() != 1)
        throw std::invalid_argument("simulate_peak_scheduler: bad budget count");
    const PowerAllocation mac_budgets =
        is_mac ? PowerAllocation{budgets[0], budgets[1]} : PowerAllocation{};

    struct Sums {
        double r1 = 0, r2 = 0, r1sq = 0, r2sq = 0;
        void merge(const Sums& o) {
            r1 += o.r1;
            r2 += o.r2;
            r1sq += o.r1sq;
            r2sq += o.r2sq;
        }
    };
    const Sums sums = mc_run_blocked<Sums>(
        mc.samples, mc.seed,
        [&](std::uint64_t, Substream& s, Sums& p) {
            const ChannelFadePower chi = model.sample(s);
            const SetMask mask = is_mac ? mac_mask(grid, chi, mac_budgets)
                                        : bc_mask(grid, chi, budgets[0]);
            RateVector best{0.0, 0.0};
            double best_val = 0.0;
            for (std::size_t i = 1; i < grid.pairs(); ++i) {
                if (!(mask & (SetMask{1} << i))) continue;
                const RateVector r = grid.pair(i);
                const double val = direction.x * r.r1 + direction.y * r.r2;
                if (val > best_val ||
                    (val == best_val && (r.r1 > best.r1 ||
                                         (r.r1 == best.r1 && r.r2 > best.r2)))) {
                    best_val = val;
                    best = r;
                }
            }
            p.r1 += best.r1;
            p.r2 += best.r2;
            p.r1sq += best.r1 * best.r1;
            p.r2sq += best.r2 * best.r2;
        },
        mc.parallel);

    const double n = static_cast<double>(mc.samples);
    SchedulerStats st;
    st.slots = mc.samples;
    st.r1_mean = sums.r1 / n;
    st.r2_mean = sums.r2 / n;
    st.r1_se = std::sqrt(std::max(0.0, sums.r1sq / n - st.r1_mean * st.r1_mean) / n);
    st.r2_se = std::sqrt(std::max(0.0, sums.r2sq / n - st.r2_mean * st.r2_mean) / n);
    return st;
}

}  // namespace netstab
