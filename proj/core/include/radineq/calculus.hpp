#pragma once

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Odd-power convention used for degenerate flux terms:
// phi_p(0) = 0 for every p > 1 (no NaN from 0^{p-2} when p < 2).
double odd_power(double z, double p);

// w' on the same grid: closed form when the profile carries one, otherwise
// second-order centered differences on the (possibly nonuniform) grid with
// one-sided second-order stencils at the endpoints.
RadialProfile radial_derivative(const RadialProfile& w);

// Strong-form field  -r^{1-n} (r^{n-1} a |w'|^{p-2} w')'  on interior nodes.
// The flux is evaluated on staggered midpoints (geometric midpoints for
// log-spaced grids, arithmetic otherwise) and differenced conservatively.
RadialProfile p_laplace_radial(const RadialProfile& w, const WeightFunction& a,
                               double p, int n, GridGrading grading);

// Same conservative machinery with an arbitrary (possibly fractional)
// exponent on the measure weight t^{d_eff-1}; used by the variable-change
// residual checks.
RadialProfile weighted_flux_divergence(const RadialProfile& w,
                                       const std::function<double(double)>& coeff,
                                       double p, double d_eff, GridGrading grading);

// Re-tabulates a profile on new nodes, carrying closures when present and
// always filling derivative samples (closed form, interpolated, or finite
// differences, in that order of preference).
RadialProfile resample_profile(const RadialProfile& u, const std::vector<double>& nodes);

}  // namespace radineq
