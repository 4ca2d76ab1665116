// The exponential integral E1, needed wherever a 1/chi power cost is
// averaged over an exponential fade.
#pragma once

namespace netstab {

// E1(x) = integral from x to infinity of exp(-t)/t dt, x > 0.
double expint_e1(double x);

}  // namespace netstab
