#include "netstab/avgpower.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "netstab/math_util.hpp"
#include "netstab/mc.hpp"

namespace netstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Candidate tables: per rate pair (and order, for the MAC) the power is a
// fixed coefficient over one fade component, so the per-sample argmax is pure
// arithmetic. Candidates are enumerated in the same order as the rate sets,
// user-1-first order before user-2-first, which fixes the tie-break.
struct MacCand {
    RateVector rate;
    DecodeOrder order;
    double wr;  // <w, r>
    double b1;  // p1 = b1 / chi1
    double b2;  // p2 = b2 / chi2
};

struct BcCand {
    RateVector rate;
    double wr;
    double strong1_b1, strong1_b2;  // chi1 >= chi2 branch
    double strong2_b1, strong2_b2;  // chi1 <  chi2 branch
};

// Power coefficient so that b / chi reproduces power_term(): 0 rates cost 0.
double coef(double rate, double scale) {
    return rate > 0.0 ? required_snr(rate) * scale : 0.0;
}

double safe_cost(double kappa, double b, double chi) {
    if (b <= 0.0) return 0.0;
    return kappa * (b / chi);  // chi == 0 gives inf or nan; neither can win
}

double safe_power(double b, double chi) { return b > 0.0 ? b / chi : 0.0; }

struct MacTable {
    std::vector<MacCand> cands;

    MacTable(double w, const RateSet& rates1, const RateSet& rates2) {
        for (double r1 : rates1.values()) {
            for (double r2 : rates2.values()) {
                if (r1 == 0.0 && r2 == 0.0) continue;
                const double wr = w * r1 + (1.0 - w) * r2;
                cands.push_back({{r1, r2},
                                 DecodeOrder::user1_first,
                                 wr,
                                 coef(r1, std::exp2(r2)),
                                 coef(r2, 1.0)});
                cands.push_back({{r1, r2},
                                 DecodeOrder::user2_first,
                                 wr,
                                 coef(r1, 1.0),
                                 coef(r2, std::exp2(r1))});
            }
        }
    }

    MacChoice choose(const Multipliers& k, const ChannelFadePower& chi) const {
        MacChoice best;  // (0,0) at score 0
        double best_wr = 0.0;
        int best_rank = 0;
        for (const MacCand& c : cands) {
            const double score =
                c.wr - safe_cost(k.k1, c.b1, chi.chi1) - safe_cost(k.k2, c.b2, chi.chi2);
            const int rank = c.order == DecodeOrder::user1_first ? 0 : 1;
            bool take = false;
            if (score > best.score) {
                take = true;
            } else if (score == best.score) {
                if (c.wr != best_wr) {
                    take = c.wr > best_wr;
                } else if (rank != best_rank) {
                    take = rank < best_rank;
                } else if (c.rate.r1 != best.rate.r1) {
                    take = c.rate.r1 > best.rate.r1;
                } else {
                    take = c.rate.r2 > best.rate.r2;
                }
            }
            if (take) {
                best.rate = c.rate;
                best.order = c.order;
                best.power = {safe_power(c.b1, chi.chi1), safe_power(c.b2, chi.chi2)};
                best.score = score;
                best_wr = c.wr;
                best_rank = rank;
            }
        }
        return best;
    }
};

struct BcTable {
    std::vector<BcCand> cands;

    BcTable(double w, const RateSet& rates1, const RateSet& rates2) {
        for (double r1 : rates1.values()) {
            for (double r2 : rates2.values()) {
                if (r1 == 0.0 && r2 == 0.0) continue;
                cands.push_back({{r1, r2},
                                 w * r1 + (1.0 - w) * r2,
                                 coef(r1, std::exp2(r2)), coef(r2, 1.0),
                                 coef(r1, 1.0), coef(r2, std::exp2(r1))});
            }
        }
    }

    BcChoice choose(double kappa, const ChannelFadePower& chi) const {
        const bool strong1 = chi.chi1 >= chi.chi2;
        BcChoice best;  // (0,0) at score 0
        double best_wr = 0.0;
        for (const BcCand& c : cands) {
            const double b1 = strong1 ? c.strong1_b1 : c.strong2_b1;
            const double b2 = strong1 ? c.strong1_b2 : c.strong2_b2;
            const double p1 = safe_power(b1, chi.chi1);
            const double p2 = safe_power(b2, chi.chi2);
            const double power = p1 + p2;
            double cost = 0.0;
            if (power > 0.0) cost = kappa * power;
            const double score = c.wr - cost;
            bool take = false;
            if (score > best.score) {
                take = true;
            } else if (score == best.score) {
                if (c.wr != best_wr) {
                    take = c.wr > best_wr;
                } else if (c.rate.r1 != best.rate.r1) {
                    take = c.rate.r1 > best.rate.r1;
                } else {
                    take = c.rate.r2 > best.rate.r2;
                }
            }
            if (take) {
                best.rate = c.rate;
                best.power = power;
                best.split = {p1, p2};
                best.score = score;
                best_wr = c.wr;
            }
        }
        return best;
    }
};

struct MomentSums {
    double r1 = 0, r2 = 0, p1 = 0, p2 = 0, pt = 0;
    double r1sq = 0, r2sq = 0, p1sq = 0, p2sq = 0, ptsq = 0;
    void merge(const MomentSums& o) {
        r1 += o.r1;
        r2 += o.r2;
        p1 += o.p1;
        p2 += o.p2;
        pt += o.pt;
        r1sq += o.r1sq;
        r2sq += o.r2sq;
        p1sq += o.p1sq;
        p2sq += o.p2sq;
        ptsq += o.ptsq;
    }
    void add(double a, double b, double c, double d) {
        const double t = c + d;
        r1 += a;
        r2 += b;
        p1 += c;
        p2 += d;
        pt += t;
        r1sq += a * a;
        r2sq += b * b;
        p1sq += c * c;
        p2sq += d * d;
        ptsq += t * t;
    }
};

MeanRatePower to_stats(const MomentSums& s, std::uint64_t samples) {
    const double n = static_cast<double>(samples);
    auto se = [n](double sum, double sumsq) {
        const double mean = sum / n;
        return std::sqrt(std::max(0.0, sumsq / n - mean * mean) / n);
    };
    MeanRatePower out;
    out.samples = samples;
    out.r1 = s.r1 / n;
    out.r2 = s.r2 / n;
    out.p1 = s.p1 / n;
    out.p2 = s.p2 / n;
    out.p_total = s.pt / n;
    out.se_r1 = se(s.r1, s.r1sq);
    out.se_r2 = se(s.r2, s.r2sq);
    out.se_p1 = se(s.p1, s.p1sq);
    out.se_p2 = se(s.p2, s.p2sq);
    out.se_p_total = se(s.pt, s.ptsq);
    return out;
}

MeanRatePower mac_expectation(const MacTable& table, const Multipliers& k,
                              const ChannelModel& model, const McOptions& mc) {
    if (mc.samples < 10'000)
        throw std::invalid_argument("expected_rate_power: need at least 1e4 samples");
    const MomentSums sums = mc_run_blocked<MomentSums>(
        mc.samples, mc.seed,
        [&](std::uint64_t, Substream& s, MomentSums& p) {
            const ChannelFadePower chi = model.sample(s);
            const MacChoice c = table.choose(k, chi);
            p.add(c.rate.r1, c.rate.r2, c.power.p1, c.power.p2);
        },
        mc.parallel);
    return to_stats(sums, mc.samples);
}

MeanRatePower bc_expectation(const BcTable& table, double kappa,
                             const ChannelModel& model, const McOptions& mc) {
    if (mc.samples < 10'000)
        throw std::invalid_argument("expected_rate_power: need at least 1e4 samples");
    const MomentSums sums = mc_run_blocked<MomentSums>(
        mc.samples, mc.seed,
        [&](std::uint64_t, Substream& s, MomentSums& p) {
            const ChannelFadePower chi = model.sample(s);
            const BcChoice c = table.choose(kappa, chi);
            p.add(c.rate.r1, c.rate.r2, c.split.p1, c.split.p2);
        },
        mc.parallel);
    return to_stats(sums, mc.samples);
}

}  // namespace

MacChoice mac_choice(double w, const Multipliers& k, const ChannelFadePower& chi,
                     const RateSet& rates1, const RateSet& rates2) {
    return MacTable(w, rates1, rates2).choose(k, chi);
}

BcChoice bc_choice(double w, double kappa, const ChannelFadePower& chi,
                   const RateSet& rates1, const RateSet& rates2) {
    return BcTable(w, rates1, rates2).choose(kappa, chi);
}

MeanRatePower mac_expected_rate_power(double w, const Multipliers& k,
                                      const RateSet& rates1, const RateSet& rates2,
                                      const ChannelModel& model, const McOptions& mc) {
    return mac_expectation(MacTable(w, rates1, rates2), k, model, mc);
}

MeanRatePower bc_expected_rate_power(double w, double kappa, const RateSet& rates1,
                                     const RateSet& rates2, const ChannelModel& model,
                                     const McOptions& mc) {
    return bc_expectation(BcTable(w, rates1, rates2), kappa, model, mc);
}

namespace {

// Scalar bisection on one multiplier. `eval` maps kappa to the controlled
// average power, which is nonincreasing in kappa. Returns the kappa meeting
// the budget within tolerance, or 0 when the constraint is already slack at
// zero price. Zero-weight ties can make the average power jump across the
// budget; the bisection then collapses onto the jump and returns its slack
// side (the constraint is inactive there and the rate objective is
// unaffected).
template <typename Eval>
double bisect_kappa(Eval&& eval, double budget, double tol_abs, int max_bisect,
                    double warm_start, double* achieved) {
    double value = eval(0.0);
    if (value <= budget) {
        *achieved = value;
        return 0.0;
    }
    double lo = 0.0;
    double hi = warm_start > 0.0 ? warm_start : 1.0;
    value = eval(hi);
    int guard = 0;
    while (value > budget) {
        lo = hi;
        hi *= 4.0;
        value = eval(hi);
        if (++guard > 60) {
            *achieved = value;
            return hi;  // caller checks the residual
        }
    }
    double hi_value = value;
    if (std::abs(hi_value - budget) <= tol_abs) {
        *achieved = hi_value;
        return hi;
    }
    for (int it = 0; it < max_bisect; ++it) {
        const double mid = 0.5 * (lo + hi);
        value = eval(mid);
        if (std::abs(value - budget) <= tol_abs) {
            *achieved = value;
            return mid;
        }
        if (value > budget) {
            lo = mid;
        } else {
            hi = mid;
            hi_value = value;
        }
        if (hi - lo <= 1e-6 * hi) break;  // interval collapsed onto a jump
    }
    *achieved = hi_value;
    return hi;
}

}  // namespace

KappaSolve bc_solve_kappa(double w, double budget, const RateSet& rates1,
                          const RateSet& rates2, const ChannelModel& model,
                          const SolveOptions& opt) {
    if (!(budget > 0.0)) throw std::invalid_argument("bc_solve_kappa: budget must be > 0");
    const BcTable table(w, rates1, rates2);
    double achieved = 0.0;
    const double kappa = bisect_kappa(
        [&](double k) { return bc_expectation(table, k, model, opt.mc).p_total; }, budget,
        opt.rel_tol * budget, opt.max_bisect, opt.warm_start.k1, &achieved);
    if (achieved > budget * (1.0 + opt.rel_tol)) {
        throw SolverError("bc_solve_kappa: no multiplier meets the power budget", w,
                          {kappa, 0.0}, (achieved - budget) / budget, 0.0);
    }
    KappaSolve out;
    out.kappa = {kappa, 0.0};
    out.stats = bc_expectation(table, kappa, model, opt.mc);
    out.outer_iters = 1;
    return out;
}

KappaSolve mac_solve_kappa(double w, const PowerAllocation& budgets,
                           const RateSet& rates1, const RateSet& rates2,
                           const ChannelModel& model, const SolveOptions& opt) {
    if (budgets.p1 < 0.0 || budgets.p2 < 0.0)
        throw std::invalid_argument("mac_solve_kappa: negative budget");
    const MacTable table(w, rates1, rates2);

    // A zero budget mutes the user outright (infinite price).
    Multipliers k{budgets.p1 == 0.0 ? kInf : opt.warm_start.k1,
                  budgets.p2 == 0.0 ? kInf : opt.warm_start.k2};
    auto eval = [&](const Multipliers& kk) { return mac_expectation(table, kk, model, opt.mc); };

    // Alternating per-coordinate bisection: re-solve each multiplier with the
    // other held fixed until the joint residuals settle. E[P_i] is
    // nonincreasing in kappa_i, so each inner solve is a monotone bisection.
    MeanRatePower stats = eval(k);
    int outer = 0;
    bool stable = false;  // multipliers unchanged by the last full pass
    auto coordinate_ok = [&](double power, double budget, double kappa) {
        if (budget <= 0.0) return true;  // muted user, power is identically 0
        if (power > budget * (1.0 + opt.rel_tol)) return false;
        if (kappa == 0.0) return true;  // slack constraint
        if (power >= budget * (1.0 - opt.rel_tol)) return true;
        // Undershoot at a positive price: accept only once the alternating
        // iterates have stopped moving (power jumped across the budget).
        return stable;
    };
    for (; outer < opt.max_outer; ++outer) {
        if (coordinate_ok(stats.p1, budgets.p1, k.k1) &&
            coordinate_ok(stats.p2, budgets.p2, k.k2))
            break;
        const Multipliers prev = k;
        double achieved = 0.0;
        if (budgets.p1 > 0.0) {
            k.k1 = bisect_kappa([&](double k1) { return eval({k1, k.k2}).p1; },
                                budgets.p1, opt.rel_tol * budgets.p1 * 0.5,
                                opt.max_bisect, k.k1, &achieved);
        }
        if (budgets.p2 > 0.0) {
            k.k2 = bisect_kappa([&](double k2) { return eval({k.k1, k2}).p2; },
                                budgets.p2, opt.rel_tol * budgets.p2 * 0.5,
                                opt.max_bisect, k.k2, &achieved);
        }
        stats = eval(k);
        auto close = [](double a, double b) {
            if (std::isinf(a) || std::isinf(b)) return a == b;
            return std::abs(a - b) <= 1e-9 + 1e-6 * std::max(std::abs(a), std::abs(b));
        };
        stable = close(k.k1, prev.k1) && close(k.k2, prev.k2);
    }

    const double resid1 =
        budgets.p1 > 0.0 ? (stats.p1 - budgets.p1) / budgets.p1 : stats.p1;
    const double resid2 =
        budgets.p2 > 0.0 ? (stats.p2 - budgets.p2) / budgets.p2 : stats.p2;
    if (resid1 > opt.rel_tol || resid2 > opt.rel_tol) {
        throw SolverError("mac_solve_kappa: alternating bisection did not converge", w, k,
                          resid1, resid2);
    }
    return {k, stats, outer};
}

namespace {

SweepResult run_sweep(const SweepOptions& opt,
                      const std::function<SweepPoint(double, const Multipliers&)>& solve_at) {
    if (opt.w_points < 11)
        throw std::invalid_argument("boundary_sweep: need at least 11 w points");

    std::vector<SweepPoint> points;
    Multipliers warm{};
    for (int i = 0; i < opt.w_points; ++i) {
        const double w = static_cast<double>(i) / (opt.w_points - 1);
        points.push_back(solve_at(w, warm));
        warm = points.back().kappa;
        if (std::isinf(warm.k1)) warm.k1 = 0.0;
        if (std::isinf(warm.k2)) warm.k2 = 0.0;
    }

    int refined = 0;
    if (opt.adaptive) {
        // One refinement pass over gaps larger than 5% of the sweep radius.
        double radius = 0.0;
        for (const SweepPoint& p : points)
            radius = std::max({radius, p.stats.r1, p.stats.r2});
        const double gap_limit = 0.05 * radius;
        std::vector<SweepPoint> extra;
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            if (static_cast<int>(extra.size()) >= opt.max_extra_points) break;
            const double dx = points[i + 1].stats.r1 - points[i].stats.r1;
            const double dy = points[i + 1].stats.r2 - points[i].stats.r2;
            if (std::hypot(dx, dy) > gap_limit) {
                Multipliers mid_warm = points[i].kappa;
                if (std::isinf(mid_warm.k1)) mid_warm.k1 = 0.0;
                if (std::isinf(mid_warm.k2)) mid_warm.k2 = 0.0;
                extra.push_back(solve_at(0.5 * (points[i].w + points[i + 1].w), mid_warm));
            }
        }
        refined = static_cast<int>(extra.size());
        points.insert(points.end(), extra.begin(), extra.end());
        std::sort(points.begin(), points.end(),
                  [](const SweepPoint& a, const SweepPoint& b) { return a.w < b.w; });
    }

    std::vector<Point> pts{{0.0, 0.0}};
    SweepResult out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const SweepPoint& p = points[i];
        pts.push_back({p.stats.r1, p.stats.r2});
        pts.push_back({p.stats.r1, 0.0});
        pts.push_back({0.0, p.stats.r2});
        if (i > 0)
            out.max_gap = std::max(out.max_gap,
                                   std::hypot(p.stats.r1 - points[i - 1].stats.r1,
                                              p.stats.r2 - points[i - 1].stats.r2));
    }
    out.region = convex_hull(pts);
    out.points = std::move(points);
    out.refined_points = refined;
    return out;
}

}  // namespace

SweepResult mac_boundary_sweep(const PowerAllocation& budgets, const RateSet& rates1,
                               const RateSet& rates2, const ChannelModel& model,
                               const SweepOptions& opt) {
    return run_sweep(opt, [&](double w, const Multipliers& warm) {
        SolveOptions solve_opt{opt.mc, opt.rel_tol, 60, 48, warm};
        const KappaSolve sol = mac_solve_kappa(w, budgets, rates1, rates2, model, solve_opt);
        return SweepPoint{w, sol.kappa, sol.stats};
    });
}

SweepResult bc_boundary_sweep(double budget, const RateSet& rates1, const RateSet& rates2,
                              const ChannelModel& model, const SweepOptions& opt) {
    return run_sweep(opt, [&](double w, const Multipliers& warm) {
        SolveOptions solve_opt{opt.mc, opt.rel_tol, 60, 48, warm};
        const KappaSolve sol = bc_solve_kappa(w, budget, rates1, rates2, model, solve_opt);
        return SweepPoint{w, sol.kappa, sol.stats};
    });
}

ThresholdPolicy optimal_threshold_policy(double r0, double avg_budget,
                                        const ChannelModel& model) {
    if (!(r0 > 0.0)) throw std::invalid_argument("optimal_threshold_policy: r0 must be > 0");
    if (!(avg_budget > 0.0))
        throw std::invalid_argument("optimal_threshold_policy: budget must be > 0");
    const double snr = required_snr(r0);
    const double mean = model.mean1;

    // E[P] of the threshold policy: snr * E[1/chi; chi >= t]
    //                             = (snr / mean) * E1(t / mean).
    const double target = avg_budget * mean / snr;  // want E1(u) == target
    double u_lo = 1e-30, u_hi = 700.0;
    if (expint_e1(u_lo) <= target) {
        return {0.0, r0};  // budget covers always-on transmission
    }
    for (int it = 0; it < 200; ++it) {
        const double u = std::sqrt(u_lo * u_hi);  // geometric: E1 spans many decades
        if (expint_e1(u) > target) {
            u_lo = u;
        } else {
            u_hi = u;
        }
        if (u_hi - u_lo <= 1e-15 * u_hi) break;
    }
    const double threshold = mean * 0.5 * (u_lo + u_hi);
    return {threshold, r0 * std::exp(-threshold / mean)};
}

}  // namespace netstab
