#include "netstab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace netstab {

namespace {

std::vector<double> alpha_grid(int points) {
    if (points < 11) throw std::invalid_argument("duality: need at least 11 alpha points");
    std::vector<double> alphas(points);
    for (int i = 0; i < points; ++i)
        alphas[i] = static_cast<double>(i) / (points - 1);
    return alphas;
}

}  // namespace

DualityResult union_dual_mac_regions(const DualFamilySpec& spec, const RateSet& rates,
                                     const ChannelModel& model, const DualityOptions& opt) {
    if (!(spec.total_budget > 0.0))
        throw std::invalid_argument("union_dual_mac_regions: budget must be > 0");
    if (spec.kind == ConstraintKind::fixed)
        throw std::invalid_argument("union_dual_mac_regions: fixed constraints unsupported");

    DualityResult out;
    out.kind = spec.kind;
    double bc_noise = 0.0;  // propagated standard-error bound on BC vertices

    if (spec.kind == ConstraintKind::peak) {
        const auto bc_cells =
            opt.bc_quadrature
                ? bc_partition_quadrature(rates, rates, spec.total_budget, model)
                : bc_partition_mc(rates, rates, spec.total_budget, model,
                                  {opt.bc_samples, opt.seed, opt.parallel});
        out.bc_region = stability_region_peak(bc_cells);
        double var = 0.0;
        for (const PartitionCell& c : bc_cells) var += c.std_error * c.std_error;
        bc_noise = std::sqrt(var) * std::hypot(rates.max_rate(), rates.max_rate());
        for (double a : alpha_grid(spec.alpha_points)) {
            const PowerAllocation budgets{a * spec.total_budget,
                                          (1.0 - a) * spec.total_budget};
            const auto cells = mac_partition(rates, rates, budgets, model);
            out.mac_regions.push_back({a, stability_region_peak(cells)});
        }
    } else {
        SweepOptions bc_opt;
        bc_opt.w_points = opt.bc_w_points;
        bc_opt.mc = {opt.sweep_samples, opt.seed, opt.parallel};
        bc_opt.rel_tol = opt.rel_tol;
        const SweepResult bc_sweep =
            bc_boundary_sweep(spec.total_budget, rates, rates, model, bc_opt);
        out.bc_region = bc_sweep.region;
        for (const SweepPoint& p : bc_sweep.points)
            bc_noise = std::max(bc_noise, std::hypot(p.stats.se_r1, p.stats.se_r2));

        SweepOptions mac_opt;
        mac_opt.w_points = opt.mac_w_points;
        mac_opt.mc = {opt.sweep_samples, opt.seed, opt.parallel};
        mac_opt.rel_tol = opt.rel_tol;
        for (double a : alpha_grid(spec.alpha_points)) {
            const PowerAllocation budgets{a * spec.total_budget,
                                          (1.0 - a) * spec.total_budget};
            try {
                out.mac_regions.push_back(
                    {a, mac_boundary_sweep(budgets, rates, rates, model, mac_opt).region});
            } catch (const SolverError& e) {
                char msg[160];
                std::snprintf(msg, sizeof(msg), "%s (dual MAC at alpha=%.4f)", e.what(), a);
                throw SolverError(msg, e.w, e.kappa, e.resid1, e.resid2);
            }
        }
    }

    std::vector<Point> pts{{0.0, 0.0}};
    for (const AlphaRegion& ar : out.mac_regions)
        pts.insert(pts.end(), ar.region.vertices().begin(), ar.region.vertices().end());
    out.union_hull = convex_hull(pts);

    out.containment_tol = std::max(opt.containment_tol, 4.0 * bc_noise);
    out.bc_contains_union = contains(out.bc_region, out.union_hull, out.containment_tol);
    out.union_contains_bc = contains(out.union_hull, out.bc_region, out.containment_tol);
    out.hausdorff = hausdorff_distance(out.bc_region, out.union_hull);
    for (const Point& v : out.bc_region.vertices())
        out.bc_max_sum_rate = std::max(out.bc_max_sum_rate, v.x + v.y);
    return out;
}

OnOffResult onoff_case(double r0, double budget, int alpha_points) {
    if (!(r0 > 0.0)) throw std::invalid_argument("onoff_case: r0 must be > 0");
    if (budget < 0.0) throw std::invalid_argument("onoff_case: negative budget");

    OnOffResult out;
    out.r0 = r0;
    out.budget = budget;

    // Two equiprobable states; the ON user sits exactly at the decodability
    // threshold (it needs the whole budget), the OFF user is below it. The
    // supported sets follow from the construction, so the two-state cell
    // lists are assembled exactly rather than through fade-space sampling.
    auto two_state_region = [&](bool user1_can, bool user2_can) {
        PartitionCell on1;  // state (ON, OFF)
        on1.probability = 0.5;
        on1.rate_set = user1_can
                           ? std::vector<RateVector>{{0.0, 0.0}, {r0, 0.0}}
                           : std::vector<RateVector>{{0.0, 0.0}};
        PartitionCell on2;  // state (OFF, ON)
        on2.probability = 0.5;
        on2.rate_set = user2_can
                           ? std::vector<RateVector>{{0.0, 0.0}, {0.0, r0}}
                           : std::vector<RateVector>{{0.0, 0.0}};
        return stability_region_peak({on1, on2});
    };

    const bool bc_on = budget > 0.0;
    out.bc_region = two_state_region(bc_on, bc_on);

    std::vector<Point> union_pts{{0.0, 0.0}};
    for (double a : alpha_grid(alpha_points)) {
        // The ON transmission costs exactly `budget`, so a split supports it
        // only when it hands one user the whole pool.
        const bool user1_can = budget > 0.0 && a * budget >= budget;
        const bool user2_can = budget > 0.0 && (1.0 - a) * budget >= budget;
        const ConvexPolygon region = two_state_region(user1_can, user2_can);
        union_pts.insert(union_pts.end(), region.vertices().begin(),
                         region.vertices().end());
    }
    out.mac_union_hull = convex_hull(union_pts);

    out.strict = contains(out.bc_region, out.mac_union_hull, 0.0) &&
                 !contains(out.mac_union_hull, out.bc_region, 0.0);
    out.bc_area = out.bc_region.area();
    out.mac_union_area = out.mac_union_hull.area();
    return out;
}

std::vector<RateVector> centralized_mac_supported_set(const ChannelFadePower& chi,
                                                      double shared_budget,
                                                      const RateSet& rates1,
                                                      const RateSet& rates2) {
    std::vector<RateVector> out;
    for (double r1 : rates1.values()) {
        for (double r2 : rates2.values()) {
            const RateVector r{r1, r2};
            // Over all splits of the pool, the cheapest way to carry the pair
            // under either decode order is the order's minimum total power.
            double best = kInfPower;
            for (DecodeOrder order : {DecodeOrder::user1_first, DecodeOrder::user2_first}) {
                const PowerAllocation p = mac_min_powers(r, order, chi);
                best = std::min(best, p.p1 + p.p2);
            }
            if (best <= shared_budget) out.push_back(r);
        }
    }
    return out;
}

}  // namespace netstab
