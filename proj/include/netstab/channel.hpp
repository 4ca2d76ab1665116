// Fading model: independent per-link exponential squared gains, the Rayleigh
// default being unit mean on both links.
#pragma once

#include <cmath>
#include <stdexcept>

#include "netstab/core.hpp"
#include "netstab/rng.hpp"

namespace netstab {

struct ChannelModel {
    double mean1 = 1.0;
    double mean2 = 1.0;

    ChannelModel() = default;
    ChannelModel(double m1, double m2) : mean1(m1), mean2(m2) {
        if (!(m1 > 0.0) || !(m2 > 0.0))
            throw std::invalid_argument("ChannelModel: means must be positive");
    }

    ChannelFadePower sample(Substream& s) const {
        const double c1 = s.next_exponential(mean1);
        const double c2 = s.next_exponential(mean2);
        return {c1, c2};
    }

    double cdf1(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean1); }
    double cdf2(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean2); }
    // Inverse CDF of link 1, used by the deterministic quadrature backend.
    double quantile1(double q) const { return -mean1 * std::log1p(-q); }
};

}  // namespace netstab
