#include "netstab/math_util.hpp"

#include <cmath>
#include <stdexcept>

namespace netstab {

double expint_e1(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("expint_e1: requires x > 0");
    if (x <= 1.0) {
        // Power series: E1(x) = -gamma - ln x + sum (-1)^(k+1) x^k / (k k!)
        constexpr double euler_gamma = 0.57721566490153286;
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= -x / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return -euler_gamma - std::log(x) + sum;
    }
    // Modified Lentz continued fraction for x > 1.
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

}  // namespace netstab
