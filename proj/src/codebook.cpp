#include "netstab/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "netstab/mc.hpp"

namespace netstab {

int max_simultaneous(std::span<const double> gains, double r0, double peak_budget) {
    if (!(r0 > 0.0)) throw std::invalid_argument("max_simultaneous: r0 must be > 0");
    const double snr = required_snr(r0);
    std::vector<double> sorted(gains.begin(), gains.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());

    const int n = static_cast<int>(sorted.size());
    for (int k = n; k >= 1; --k) {
        // Demands grow toward earlier decode slots; the strongest gains take
        // the most demanding slots, so the sorted prefix decides feasibility.
        bool ok = true;
        double demand = snr;  // slot j = k, then multiplied by (1 + snr) upward
        for (int j = k; j >= 1 && ok; --j) {
            if (sorted[j - 1] * peak_budget < demand) ok = false;
            demand *= 1.0 + snr;
        }
        if (ok) return k;
    }
    return 0;
}

SumRateEstimate sum_rate(const SymmetricMacSpec& spec, const McOptions& mc) {
    if (spec.n_users < 1) throw std::invalid_argument("sum_rate: need n_users >= 1");
    if (mc.samples < 10'000) throw std::invalid_argument("sum_rate: need at least 1e4 samples");

    // Integer census of the served-user count; exact under any merge order.
    struct Counts {
        std::uint64_t sum = 0, sumsq = 0;
        void merge(const Counts& o) {
            sum += o.sum;
            sumsq += o.sumsq;
        }
    };
    const int n_users = spec.n_users;
    const Counts counts = mc_run_blocked<Counts>(
        mc.samples, mc.seed,
        [&](std::uint64_t, Substream& s, Counts& p) {
            double gains[64];
            for (int u = 0; u < n_users; ++u)
                gains[u] = s.next_exponential(spec.chi_mean);
            const std::uint64_t k = static_cast<std::uint64_t>(
                max_simultaneous({gains, static_cast<std::size_t>(n_users)}, spec.r0,
                                 spec.peak_budget));
            p.sum += k;
            p.sumsq += k * k;
        },
        mc.parallel);

    const double n = static_cast<double>(mc.samples);
    const double mean = static_cast<double>(counts.sum) / n;
    const double var = std::max(0.0, static_cast<double>(counts.sumsq) / n - mean * mean);
    return {spec.r0 * mean, spec.r0 * std::sqrt(var / n), mc.samples};
}

CodebookOptimum optimize_r0(int n_users, double peak_budget, double chi_mean,
                            const OptimizeOptions& opt) {
    if (n_users < 1 || n_users > 64)
        throw std::invalid_argument("optimize_r0: n_users out of range");
    if (opt.grid_points < 3 || !(opt.r0_max > opt.r0_min) || !(opt.r0_min > 0.0))
        throw std::invalid_argument("optimize_r0: bad search range");

    int evals = 0;
    auto value_at = [&](double r0) {
        ++evals;
        SymmetricMacSpec spec{n_users, r0, peak_budget, chi_mean};
        return sum_rate(spec, opt.mc);  // same seed: common random numbers
    };

    // Coarse grid to localize the maximizer.
    double best_r0 = opt.r0_min;
    SumRateEstimate best = value_at(best_r0);
    const double step = (opt.r0_max - opt.r0_min) / (opt.grid_points - 1);
    for (int i = 1; i < opt.grid_points; ++i) {
        const double r0 = opt.r0_min + i * step;
        const SumRateEstimate s = value_at(r0);
        if (s.value > best.value) {
            best = s;
            best_r0 = r0;
        }
    }

    // Golden-section refinement on the bracketing grid cells.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(opt.r0_min, best_r0 - step);
    double b = std::min(opt.r0_max, best_r0 + step);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    SumRateEstimate f1 = value_at(x1);
    SumRateEstimate f2 = value_at(x2);
    for (int it = 0; it < opt.golden_iters && b - a > 1e-4; ++it) {
        if (f1.value >= f2.value) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = value_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = value_at(x2);
        }
    }
    const double cand_r0 = f1.value >= f2.value ? x1 : x2;
    const SumRateEstimate cand = f1.value >= f2.value ? f1 : f2;
    if (cand.value > best.value) {
        best = cand;
        best_r0 = cand_r0;
    }
    return {best_r0, best.value, best.std_error, evals};
}

}  // namespace netstab
