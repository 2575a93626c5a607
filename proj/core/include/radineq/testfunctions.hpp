#pragma once

#include <random>
#include <vector>

#include "radineq/types.hpp"

namespace radineq {

// Library of compactly supported nonnegative test functions.  Every factory
// returns a profile sampled on `nodes` that also carries value/derivative
// closures, so callers can resample or refine without interpolation loss.

// Piecewise-linear hat: 0 at lo and hi, 1 at peak.
RadialProfile tent(const std::vector<double>& nodes, double lo, double peak, double hi);

// exp(-1/(1-s^2)) rescaled to (lo, hi) in the r coordinate and normalized to
// peak value 1; all derivatives vanish at the support boundary.
RadialProfile smooth_bump(const std::vector<double>& nodes, double lo, double hi);

// Same mollifier profile but in s = ln r, so s-uniform quadrature sees a
// smooth integrand across many decades.
RadialProfile log_bump(const std::vector<double>& nodes, double lo, double hi);

// 0 outside (lo1, hi2), exactly 1 on [lo2, hi1], with C-infinity ramps in
// the ln r coordinate on (lo1, lo2) and (hi1, hi2).
RadialProfile plateau_cutoff(const std::vector<double>& nodes, double lo1, double lo2, double hi1,
                             double hi2);

// Nonnegative piecewise-linear function vanishing at lo and hi with `knots`
// random interior break points and heights in (0, 1].  Deterministic for a
// given generator state.
RadialProfile random_knot_tent(const std::vector<double>& nodes, double lo, double hi,
                               std::size_t knots, std::mt19937_64& rng);

// phi = xi^p with the analytic chain-rule derivative p xi^{p-1} xi', the
// substitution used to turn gradient estimates into inequality margins.
RadialProfile pth_power(const RadialProfile& xi, double p);

}  // namespace radineq
