#pragma once

#include <cmath>
#include <utility>

#include "radineq/grid.hpp"
#include "radineq/measures.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Elementary product split: for s1, s2 >= 0, tau > 0, p > 1,
//   s1 * s2^{p-1}  <=  s1^p / (p tau^{p-1})  +  ((p-1)/p) tau s2^p,
// with equality exactly when s1 = tau * s2.  Returns (lhs, rhs).
std::pair<double, double> young_split(double s1, double s2, double p, double tau);

// Both sides of the gradient-free energy estimate for a nonnegative
// supersolution u, a compatible pair (psi, g), an admissible shift sigma and a
// nonnegative compactly supported cutoff phi:
//   lhs = integral (phi_nl(u) b + sigma a|u'|^p / g(u)) psi(u) phi dx   on {u > 0}
//   rhs = c * integral a psi(u) g(u)^{p-1} |phi'|^p phi^{1-p} dx        on {u > 0, noncritical, phi > phi_floor}
// where c = caccioppoli_constant(p, C, sigma).  The estimate holds when
// lhs <= rhs + tol.
struct CaccioppoliReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;  // the multiplier c applied inside rhs
};

CaccioppoliReport caccioppoli_margin(const PDIProblem& problem, const RadialProfile& u,
                                     const PsiGPair& pair, double sigma,
                                     const RadialProfile& phi,
                                     const QuadratureGrid& grid,
                                     double eps_grad = 0.0);

// Level-capped variant: the integrals above are restricted to {0 < u < R} and
// the right-hand side gains a boundary-layer correction
//   C_tilde(R) = psi(R) [ integral_{u >= R/2} a|u'|^{p-1}|phi'| dx
//                         - integral_{u >= R/2} phi_nl(u) b phi dx ].
// For bounded profiles the correction vanishes once R/2 exceeds sup u, and the
// estimate reduces to the global one.
struct LocalEstimateReport {
  double lhs = 0.0;
  double rhs = 0.0;        // capped main term plus the correction
  double correction = 0.0; // C_tilde(R)
};

LocalEstimateReport local_estimate_margin(const PDIProblem& problem,
                                          const RadialProfile& u,
                                          const PsiGPair& pair, double sigma,
                                          const RadialProfile& phi, double R,
                                          const QuadratureGrid& grid,
                                          double eps_grad = 0.0);

// Shift-and-cap regularization min{u + delta, R}: strictly positive, bounded,
// derivative zero wherever the cap binds.  Requires 0 < delta < R.
RadialProfile truncate_profile(const RadialProfile& u, double delta, double R);

// Acceptance rule shared by the unit tests and the command pipeline: an
// inequality lhs <= rhs counts as holding up to quadrature noise.
inline bool margin_holds(double lhs, double rhs) {
  return lhs <= rhs + 1e-9 * std::abs(rhs) + 1e-12;
}

}  // namespace radineq
