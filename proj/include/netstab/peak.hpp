// Peak-power stability machinery: partition the fade space into cells of
// constant supported rate set, attach probabilities, and assemble the region
// as the probability-weighted Minkowski sum of the cell hulls.
#pragma once

#include <cstdint>
#include <vector>

#include "netstab/channel.hpp"
#include "netstab/core.hpp"
#include "netstab/geometry.hpp"

namespace netstab {

enum class NetworkKind { mac, bc };

struct McOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    bool parallel = true;
};

// Half-open box [x0,x1) x [y0,y1) in (chi1, chi2); x1/y1 may be +infinity.
struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

struct PartitionCell {
    std::vector<RateVector> rate_set;  // always contains (0,0)
    std::vector<Rect> rects;           // analytic MAC cells only
    double probability = 0.0;
    double std_error = 0.0;            // 0 for analytic / quadrature cells
};

// Rate pairs feasible at chi under at least one decoding order with powers at
// or below the peak budgets.
std::vector<RateVector> mac_supported_set(const ChannelFadePower& chi,
                                          const PowerAllocation& budgets,
                                          const RateSet& rates1, const RateSet& rates2);

// Rate pairs whose minimum broadcast power fits the peak budget (single-user
// decode constraints included; ties at cell boundaries go to the larger set).
std::vector<RateVector> bc_supported_set(const ChannelFadePower& chi, double budget,
                                         const RateSet& rates1, const RateSet& rates2);

// Exact threshold-grid decomposition with closed-form probabilities from the
// per-link fade CDFs.
std::vector<PartitionCell> mac_partition(const RateSet& rates1, const RateSet& rates2,
                                         const PowerAllocation& budgets,
                                         const ChannelModel& model);

// Monte Carlo classification cross-checks (empirical frequencies + standard
// errors). Deterministic for a fixed (seed, samples) at any thread count.
std::vector<PartitionCell> mac_partition_mc(const RateSet& rates1, const RateSet& rates2,
                                            const PowerAllocation& budgets,
                                            const ChannelModel& model, const McOptions& mc);
std::vector<PartitionCell> bc_partition_mc(const RateSet& rates1, const RateSet& rates2,
                                           double budget, const ChannelModel& model,
                                           const McOptions& mc);

// Deterministic backend for the BC cells: for fixed chi1 the supported set is
// monotone in chi2 with computable thresholds, so each cell's slice weight is
// a CDF difference; the outer chi1 integral runs over the quantile transform.
std::vector<PartitionCell> bc_partition_quadrature(const RateSet& rates1,
                                                   const RateSet& rates2, double budget,
                                                   const ChannelModel& model,
                                                   int panels = 512);

// Smallest chi2 at which the rate pair is BC-supported for the given chi1
// (+infinity when no chi2 works). Exposed for the quadrature backend tests.
double bc_chi2_threshold(const RateVector& r, double chi1, double budget);

// Weighted Minkowski sum of the cell hulls. Requires probabilities summing
// to 1 within 1e-6.
ConvexPolygon stability_region_peak(const std::vector<PartitionCell>& cells);

struct SchedulerStats {
    double r1_mean = 0.0, r2_mean = 0.0;
    double r1_se = 0.0, r2_se = 0.0;
    std::uint64_t slots = 0;
};

// Stationary scheduler: every slot transmits the supported rate pair that
// maximizes <direction, r> (ties to larger r1). Its long-run average lands on
// the corresponding boundary point of the peak region.
SchedulerStats simulate_peak_scheduler(NetworkKind kind, const RateSet& rates1,
                                       const RateSet& rates2,
                                       const std::vector<double>& budgets,
                                       const ChannelModel& model, Point direction,
                                       const McOptions& mc);

}  // namespace netstab
