#pragma once

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Pointwise field  -div(a |u'|^{p-2} u') - b phi(u)  at the interior nodes of
// `grid`; the differential inequality holds in strong form iff it is >= -tol.
RadialProfile strong_residual(const PDIProblem& problem, const RadialProfile& u,
                              const QuadratureGrid& grid);

// integral a |u'|^{p-2} u' w' dx  -  integral phi(u) b w dx  for a nonnegative
// test function w that vanishes near both boundary radii.
double weak_form_margin(const PDIProblem& problem, const RadialProfile& u,
                        const RadialProfile& w, const QuadratureGrid& grid);

// Admissibility threshold: the supremum over noncritical nodes of
//   s(x) = -phi(u) b g(u) / (a |u'|^p)
// on {u > 0}.  A critical node (flux density below eps_grad) carrying
// phi(u) b < 0 forces +infinity.  A profile with no noncritical nodes at all
// reports the -infinity sentinel and the constant_profile flag.
// eps_grad <= 0 selects the default 1e-10 * max_i a|u'|^p.
SigmaResult compute_sigma0(const PDIProblem& problem, const RadialProfile& u,
                           const ScalarFunction& g, double eps_grad = 0.0);

// Throws unless the shift parameter lies in its admissible window
// [sigma0, C): below sigma0 the shifted load can turn negative, at or above C
// the estimate's constant blows up.  Shared by the energy estimate and the
// measure construction so the two cannot disagree on admissibility.
void require_admissible_shift(const PDIProblem& problem, const RadialProfile& u,
                              const ScalarFunction& g, double sigma, double C,
                              double eps_grad = 0.0);

}  // namespace radineq
