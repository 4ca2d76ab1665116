// Average-power stability regions. Per channel state the scheduler picks the
// rate vector (and decode order, for the MAC) maximizing the power-priced
// score <w,r> - kappa . P; the multipliers are bisected until the average
// powers meet the budgets, and the region boundary is traced by sweeping the
// weight w over [0,1].
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "netstab/channel.hpp"
#include "netstab/core.hpp"
#include "netstab/geometry.hpp"
#include "netstab/peak.hpp"

namespace netstab {

struct Multipliers {
    double k1 = 0.0;
    double k2 = 0.0;  // unused for BC
};

struct MacChoice {
    RateVector rate;
    DecodeOrder order = DecodeOrder::user1_first;
    PowerAllocation power;
    double score = 0.0;
};

struct BcChoice {
    RateVector rate;
    double power = 0.0;
    PowerAllocation split;  // dual-MAC emulation split of `power`
    double score = 0.0;
};

// Deterministic per-state argmax maps. Score ties break lexicographically:
// larger <w,r>, then user-1-first order, then larger r1, then larger r2.
MacChoice mac_choice(double w, const Multipliers& k, const ChannelFadePower& chi,
                     const RateSet& rates1, const RateSet& rates2);
BcChoice bc_choice(double w, double kappa, const ChannelFadePower& chi,
                   const RateSet& rates1, const RateSet& rates2);

struct MeanRatePower {
    double r1 = 0.0, r2 = 0.0;
    double p1 = 0.0, p2 = 0.0;       // MAC: per user; BC: emulation split
    double p_total = 0.0;            // p1 + p2 accumulated jointly
    double se_r1 = 0.0, se_r2 = 0.0;
    double se_p1 = 0.0, se_p2 = 0.0;
    double se_p_total = 0.0;
    std::uint64_t samples = 0;
};

MeanRatePower mac_expected_rate_power(double w, const Multipliers& k,
                                      const RateSet& rates1, const RateSet& rates2,
                                      const ChannelModel& model, const McOptions& mc);
MeanRatePower bc_expected_rate_power(double w, double kappa, const RateSet& rates1,
                                     const RateSet& rates2, const ChannelModel& model,
                                     const McOptions& mc);

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, double w, Multipliers kappa,
                double resid1, double resid2)
        : std::runtime_error(msg), w(w), kappa(kappa), resid1(resid1), resid2(resid2) {}
    double w;
    Multipliers kappa;
    double resid1, resid2;  // relative power residuals at the last iterate
};

struct SolveOptions {
    McOptions mc;
    double rel_tol = 0.01;  // |E[P] - budget| <= rel_tol * budget
    int max_outer = 60;
    int max_bisect = 48;
    Multipliers warm_start{};  // initial iterate, e.g. the neighbouring sweep point
};

struct KappaSolve {
    Multipliers kappa;
    MeanRatePower stats;
    int outer_iters = 0;
};

// A zero budget is honored by treating the user's multiplier as +infinity
// (any positive-power candidate is rejected).
KappaSolve mac_solve_kappa(double w, const PowerAllocation& budgets,
                           const RateSet& rates1, const RateSet& rates2,
                           const ChannelModel& model, const SolveOptions& opt);
KappaSolve bc_solve_kappa(double w, double budget, const RateSet& rates1,
                          const RateSet& rates2, const ChannelModel& model,
                          const SolveOptions& opt);

struct SweepPoint {
    double w = 0.0;
    Multipliers kappa;
    MeanRatePower stats;
};

struct SweepResult {
    ConvexPolygon region;
    std::vector<SweepPoint> points;
    int refined_points = 0;   // extra w values inserted by the adaptive pass
    double max_gap = 0.0;     // largest boundary-point gap after refinement
};

struct SweepOptions {
    int w_points = 101;  // uniform grid on [0,1], endpoints included
    McOptions mc;
    double rel_tol = 0.01;
    bool adaptive = true;  // refine where consecutive boundary points are far apart
    int max_extra_points = 24;
};

SweepResult mac_boundary_sweep(const PowerAllocation& budgets, const RateSet& rates1,
                               const RateSet& rates2, const ChannelModel& model,
                               const SweepOptions& opt);
SweepResult bc_boundary_sweep(double budget, const RateSet& rates1, const RateSet& rates2,
                              const ChannelModel& model, const SweepOptions& opt);

struct ThresholdPolicy {
    double threshold = 0.0;  // transmit iff chi >= threshold
    double rate = 0.0;       // achieved average rate
};

// Optimal point-to-point fixed-codebook policy under an average power budget:
// transmit exactly when the fade clears a threshold chosen so the expected
// power spends the whole budget (threshold 0 when even always-on fits).
ThresholdPolicy optimal_threshold_policy(double r0, double avg_budget,
                                        const ChannelModel& model);

}  // namespace netstab
