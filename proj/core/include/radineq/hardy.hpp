#pragma once

#include "radineq/grid.hpp"
#include "radineq/measures.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Builds the weighted-norm inequality carried by a verified nonnegative
// supersolution u: tabulates
//   mu1 = (phi_nl(u) b + sigma a|u'|^p / g(u) [noncritical]) psi(u) on {u > 0}
//   mu2_raw = a psi(u) g(u)^{p-1}            on {u > 0, noncritical}
// at the grid nodes and stores the multiplier ((p-1)/(C-sigma))^{p-1}
// separately, so that  integral |xi|^p dmu1 <= constant * integral |xi'|^p mu2_raw dx
// for every compactly supported Lipschitz xi.
//
// Unless `waive_hypothesis_checks` is set, the constructor re-verifies the
// hypotheses derivable from its own inputs: the degeneracy-control condition
// on a, the differential compatibility of (psi, g), and the near-zero
// behavior of the auxiliary quotients, each on the value range u actually
// attains.  (Tail decay over caller-chosen compact sets is the verification
// pipeline's job.)  The shift window sigma in [sigma0, C) is enforced even
// with the waiver.
HardyData construct_hardy_measures(const PDIProblem& problem, const RadialProfile& u,
                                   const PsiGPair& pair, double sigma,
                                   const QuadratureGrid& grid,
                                   bool waive_hypothesis_checks = false,
                                   double eps_grad = 0.0);

struct HardyMargins {
  double lhs = 0.0;  // integral |xi|^p dmu1
  double rhs = 0.0;  // constant * integral |xi'|^p mu2_raw dx
};

// Evaluates both sides against a compactly supported test function.  The
// domain supplies the volume measure (spherical shells or a plain interval).
// The right side integrates |xi'|^p only where |xi|^p exceeds a relative
// support floor (1e-12 of its peak) — the same floor the energy estimate
// applies to its cutoff — so the substitution phi = xi^p turns one estimate
// into the other exactly on the grid.  For profiles that vanish with nonzero
// slope (e.g. an eigenfunction hitting zero at the boundary) this floor
// strips the boundary quadrature cells, an O(h) reduction of the right side.
HardyMargins hardy_margin(const HardyData& hd, const RadialProfile& xi,
                          const RadialDomain& domain, const QuadratureGrid& grid);

// Convenience overload: spherical volume measure in dimension n on the
// annulus spanned by the grid.
HardyMargins hardy_margin(const HardyData& hd, const RadialProfile& xi, int n,
                          const QuadratureGrid& grid);

// Direct weight-pair inequality  integral |xi|^p b dx <= integral |xi'|^p a dx
// (constant 1): mu1 = b, mu2_raw = a.  Requires b >= 0 on the grid and a
// passing the degeneracy-control condition.  When an eigenfunction u0 with
//   -div(a |u0'|^{p-2} u0') = b u0^{p-1},  u0 >= 0, u0 = 0 on the boundary,
// is supplied and its weak-form margin vanishes, the result is marked
// proved-by-eigenfunction: equality is attained at xi = u0, so the constant 1
// cannot be improved.
HardyData sharp_case_measures(const WeightFunction& a, const WeightFunction& b,
                              double p, const RadialDomain& domain,
                              const QuadratureGrid& grid,
                              const RadialProfile* eigenfunction = nullptr);

}  // namespace radineq
