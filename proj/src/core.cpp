#include "netstab/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netstab {

double required_snr(double rate) { return std::exp2(rate) - 1.0; }

double rate_snr_ratio(double rate) {
    if (rate <= 0.0) return 0.0;
    return rate / required_snr(rate);
}

RateSet::RateSet(std::vector<double> rates) {
    for (double r : rates) {
        if (!(r >= 0.0)) throw std::invalid_argument("RateSet: rates must be nonnegative");
    }
    rates.push_back(0.0);
    std::sort(rates.begin(), rates.end());
    rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
    rates_ = std::move(rates);
}

double shannon_rate(double chi, double power) {
    if (chi < 0.0 || power < 0.0)
        throw std::invalid_argument("shannon_rate: negative gain or power");
    return std::log2(1.0 + chi * power);
}

namespace {

// (2^r - 1) * scale / chi, with the rate-0 case exactly 0 even at chi == 0.
double power_term(double rate, double scale, double chi) {
    if (rate <= 0.0) return 0.0;
    const double snr = required_snr(rate);
    if (chi <= 0.0) return kInfPower;
    return snr * scale / chi;
}

}  // namespace

PowerAllocation mac_min_powers(const RateVector& r, DecodeOrder order,
                               const ChannelFadePower& chi) {
    if (r.r1 < 0.0 || r.r2 < 0.0 || chi.chi1 < 0.0 || chi.chi2 < 0.0)
        throw std::invalid_argument("mac_min_powers: negative input");
    if (order == DecodeOrder::user1_first) {
        // User 1 decoded against user 2 at its own minimum power, then
        // cancelled; user 2 decoded clean.
        return {power_term(r.r1, std::exp2(r.r2), chi.chi1),
                power_term(r.r2, 1.0, chi.chi2)};
    }
    return {power_term(r.r1, 1.0, chi.chi1),
            power_term(r.r2, std::exp2(r.r1), chi.chi2)};
}

PowerAllocation bc_emulation_split(const RateVector& r, const ChannelFadePower& chi) {
    if (r.r1 < 0.0 || r.r2 < 0.0 || chi.chi1 < 0.0 || chi.chi2 < 0.0)
        throw std::invalid_argument("bc_emulation_split: negative input");
    // The stronger user's codeword is boosted by the weaker user's rate so it
    // survives being decoded behind the weaker user's signal.
    if (chi.chi1 >= chi.chi2) {
        return {power_term(r.r1, std::exp2(r.r2), chi.chi1),
                power_term(r.r2, 1.0, chi.chi2)};
    }
    return {power_term(r.r1, 1.0, chi.chi1),
            power_term(r.r2, std::exp2(r.r1), chi.chi2)};
}

double bc_min_power(const RateVector& r, const ChannelFadePower& chi) {
    const PowerAllocation split = bc_emulation_split(r, chi);
    return split.p1 + split.p2;
}

bool mac_feasible_at_powers(const RateVector& r, const ChannelFadePower& chi,
                            const PowerAllocation& powers, DecodeOrder order) {
    const double s1 = chi.chi1 * powers.p1;
    const double s2 = chi.chi2 * powers.p2;
    if (order == DecodeOrder::user1_first) {
        // User 1 sees user 2 as noise; user 2 is decoded after cancellation.
        return std::log2(1.0 + s1 / (1.0 + s2)) >= r.r1 && std::log2(1.0 + s2) >= r.r2;
    }
    return std::log2(1.0 + s2 / (1.0 + s1)) >= r.r2 && std::log2(1.0 + s1) >= r.r1;
}

}  // namespace netstab
