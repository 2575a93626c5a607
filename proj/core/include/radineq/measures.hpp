#pragma once

#include <vector>

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Nodewise ingredients shared by the energy estimate and the weighted-norm
// inequality derived from it.  Both estimates integrate the same two density
// arrays against powers of a cutoff function, so tabulating them in a single
// place makes the cutoff substitution phi = xi^p an exact grid identity
// rather than an approximate one.
struct MeasureNodes {
  std::vector<double> r;        // integration nodes
  std::vector<double> dx;       // quadrature weights with the volume measure folded in
  std::vector<double> u;        // profile samples on r
  std::vector<double> du;       // profile derivative samples on r
  std::vector<double> dens;     // a |u'|^p, the flux density deciding node criticality
  std::vector<double> mu1;      // (phi(u) b + sigma dens / g(u) [noncritical]) psi(u) on {u > u_floor}
  std::vector<double> mu2_raw;  // a psi(u) g(u)^{p-1} on {u > u_floor} and noncritical; constant excluded
  double u_floor = 0.0;         // positivity threshold: 1e-14 * max u
  double eps = 0.0;             // criticality threshold on dens
};

// Tabulates the densities above.  The sigma-term of mu1 and the whole of
// mu2_raw carry the noncriticality indicator (dens > eps), mirroring the
// gradient indicator in the underlying measures; eps_grad <= 0 selects the
// default 1e-10 * max dens, the same rule the admissibility threshold uses.
MeasureNodes measure_nodes(const PDIProblem& problem, const RadialProfile& u,
                           const PsiGPair& pair, double sigma,
                           const QuadratureGrid& grid, double eps_grad = 0.0);

}  // namespace radineq
