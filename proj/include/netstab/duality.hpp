// Numerical duality checks between BC and dual MAC stability regions: the
// union over per-user budget splits of the dual MAC regions versus the BC
// region (containment under peak budgets, equality under average budgets),
// the exact two-state ON-OFF construction certifying strictness, and the
// shared-pool MAC whose per-state split emulates the BC.
#pragma once

#include <vector>

#include "netstab/avgpower.hpp"
#include "netstab/channel.hpp"
#include "netstab/core.hpp"
#include "netstab/geometry.hpp"
#include "netstab/peak.hpp"

namespace netstab {

struct DualFamilySpec {
    double total_budget = 0.0;  // BC budget; MAC splits are (a, 1-a) times this
    ConstraintKind kind = ConstraintKind::peak;
    int alpha_points = 21;
};

struct DualityOptions {
    // Peak: BC cell probabilities (MAC cells are closed-form).
    std::uint64_t bc_samples = 1'000'000;
    bool bc_quadrature = false;   // deterministic slice quadrature instead of MC
    // Average: per-sweep-point Monte Carlo.
    int mac_w_points = 21;
    int bc_w_points = 41;
    std::uint64_t sweep_samples = 100'000;
    double rel_tol = 0.01;
    std::uint64_t seed = 1;
    bool parallel = true;
    double containment_tol = 1e-3;
};

struct AlphaRegion {
    double alpha = 0.0;
    ConvexPolygon region;
};

struct DualityResult {
    ConstraintKind kind = ConstraintKind::peak;
    ConvexPolygon bc_region;
    ConvexPolygon union_hull;
    std::vector<AlphaRegion> mac_regions;
    bool bc_contains_union = false;
    bool union_contains_bc = false;
    double hausdorff = 0.0;
    double bc_max_sum_rate = 0.0;
    // Tolerance the verdicts were taken at: the configured floor, widened by
    // the BC region's propagated Monte Carlo error (the regions share their
    // single-user axis endpoints, where the true margin is zero).
    double containment_tol = 0.0;
};

// Dual networks share the rate set across all transmitters.
DualityResult union_dual_mac_regions(const DualFamilySpec& spec, const RateSet& rates,
                                     const ChannelModel& model, const DualityOptions& opt);

struct OnOffResult {
    double r0 = 0.0;
    double budget = 0.0;
    ConvexPolygon bc_region;        // square with corner (r0/2, r0/2)
    ConvexPolygon mac_union_hull;   // triangle over the two axis segments
    bool strict = false;            // bc strictly contains the union
    double bc_area = 0.0;
    double mac_union_area = 0.0;
};

// Two equiprobable states, each with exactly one user at the decodability
// threshold; regions are assembled exactly (no Monte Carlo).
OnOffResult onoff_case(double r0, double budget, int alpha_points = 21);

// Rate pairs reachable when the two MAC transmitters draw from one shared
// peak-power pool. Matches bc_supported_set at every state.
std::vector<RateVector> centralized_mac_supported_set(const ChannelFadePower& chi,
                                                      double shared_budget,
                                                      const RateSet& rates1,
                                                      const RateSet& rates2);

}  // namespace netstab
