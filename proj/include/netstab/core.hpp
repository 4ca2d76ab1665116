// Domain types and the per-state feasibility / minimum-power primitives for
// two-user Gaussian multiple-access and broadcast networks. Noise power is
// unity at every receiver and rates are in bits per slot (base-2 logs), so a
// rate r needs SNR 2^r - 1.
#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace netstab {

inline constexpr double kInfPower = std::numeric_limits<double>::infinity();

// Required SNR to decode rate r at unit noise.
double required_snr(double rate);  // 2^r - 1
// Reciprocal slope constant r / (2^r - 1) used by the decision-map plots.
double rate_snr_ratio(double rate);

// Finite set of admissible codebook rates for one user. Always contains 0
// (silence); strictly increasing.
class RateSet {
public:
    RateSet() : rates_{0.0} {}
    explicit RateSet(std::vector<double> rates);

    const std::vector<double>& values() const { return rates_; }
    std::size_t size() const { return rates_.size(); }
    double max_rate() const { return rates_.back(); }

    // Convenience for the single-codebook case {0, r0}.
    static RateSet fixed(double r0) { return RateSet({0.0, r0}); }

private:
    std::vector<double> rates_;
};

struct RateVector {
    double r1 = 0.0;
    double r2 = 0.0;
    friend bool operator==(const RateVector&, const RateVector&) = default;
};

// Squared channel gains (chi_i = h_i^2).
struct ChannelFadePower {
    double chi1 = 0.0;
    double chi2 = 0.0;
};

enum class ConstraintKind { fixed, peak, average };

struct PowerConstraint {
    ConstraintKind kind = ConstraintKind::peak;
    std::vector<double> budgets;  // one per transmitter (BC has one)
};

enum class DecodeOrder { user1_first, user2_first };

struct PowerAllocation {
    double p1 = 0.0;
    double p2 = 0.0;
};

// log2(1 + chi * p). Throws std::invalid_argument on negative input.
double shannon_rate(double chi, double power);

// Minimum transmit powers that deliver the rate pair through successive
// decoding in the given order, unit noise. Infeasible components (positive
// rate on a zero gain) come back as +infinity so optimizers can compare
// uniformly.
PowerAllocation mac_min_powers(const RateVector& r, DecodeOrder order,
                               const ChannelFadePower& chi);

// Minimum total broadcast power; the weaker user's codeword is decoded first
// by both receivers.
double bc_min_power(const RateVector& r, const ChannelFadePower& chi);

// Per-user split of bc_min_power realized by the dual MAC that decodes in the
// channel-imposed order. p1 + p2 == bc_min_power(r, chi) exactly.
PowerAllocation bc_emulation_split(const RateVector& r, const ChannelFadePower& chi);

// Successive-decoding feasibility of a rate pair at a *given* power
// allocation (both users transmit at exactly these powers).
bool mac_feasible_at_powers(const RateVector& r, const ChannelFadePower& chi,
                            const PowerAllocation& powers, DecodeOrder order);

}  // namespace netstab
