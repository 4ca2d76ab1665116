// N-user symmetric fixed-codebook MAC under peak power: maximum stable
// sum-rate and the codebook rate that maximizes it.
#pragma once

#include <cstdint>
#include <span>

#include "netstab/peak.hpp"

namespace netstab {

struct SymmetricMacSpec {
    int n_users = 1;
    double r0 = 1.0;          // common codebook rate
    double peak_budget = 1.0; // common per-user peak power
    double chi_mean = 1.0;    // i.i.d. exponential fade mean per user
};

// Largest number of users that can transmit the common rate simultaneously:
// serve the k strongest, decode strongest first, everyone at minimum power.
// User in decode slot j (1-based, out of k) must clear
//   chi_(j) * budget >= snr * (1 + snr)^(k - j).
int max_simultaneous(std::span<const double> gains, double r0, double peak_budget);

struct SumRateEstimate {
    double value = 0.0;      // r0 * E[max_simultaneous]
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

SumRateEstimate sum_rate(const SymmetricMacSpec& spec, const McOptions& mc);

struct OptimizeOptions {
    McOptions mc{100'000, 1, true};
    double r0_min = 0.05;
    double r0_max = 4.0;
    int grid_points = 24;
    int golden_iters = 40;
};

struct CodebookOptimum {
    double r0_star = 0.0;
    double s_star = 0.0;
    double s_std_error = 0.0;
    int evaluations = 0;
};

// Grid scan plus golden-section refinement on the common-random-numbers
// sum-rate estimate (every evaluation reuses the same fade draws).
CodebookOptimum optimize_r0(int n_users, double peak_budget, double chi_mean,
                            const OptimizeOptions& opt);

}  // namespace netstab
