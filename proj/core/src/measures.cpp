#include "radineq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "radineq/calculus.hpp"

namespace radineq {

MeasureNodes measure_nodes(const PDIProblem& problem, const RadialProfile& u,
                           const PsiGPair& pair, double sigma,
                           const QuadratureGrid& grid, double eps_grad) {
  problem.validate();
  ensure(pair.psi.f && pair.g.f, "measure_nodes: pair needs callable psi and g");

  const RadialProfile ur = resample_profile(u, grid.nodes);
  const std::size_t m = grid.nodes.size();

  MeasureNodes out;
  out.r = grid.nodes;
  out.dx = dx_weights(grid, problem.domain);
  out.u = ur.values;
  out.du = ur.derivative_values;
  out.dens.assign(m, 0.0);
  out.mu1.assign(m, 0.0);
  out.mu2_raw.assign(m, 0.0);

  double umax = 0.0, dmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    out.dens[i] = problem.a.eval(out.r[i]) * std::pow(std::abs(out.du[i]), problem.p);
    dmax = std::max(dmax, out.dens[i]);
    umax = std::max(umax, out.u[i]);
  }
  out.u_floor = 1e-14 * umax;
  out.eps = eps_grad > 0.0 ? eps_grad : 1e-10 * dmax;

  for (std::size_t i = 0; i < m; ++i) {
    if (out.u[i] <= out.u_floor) continue;  // outside {u > 0}
    const double psi = pair.psi.f(out.u[i]);
    const double gv = pair.g.f(out.u[i]);
    ensure(std::isfinite(psi) && psi >= 0.0,
           "measure_nodes: psi(u) must be finite and nonnegative; at u = " +
               std::to_string(out.u[i]) + " got " + std::to_string(psi));
    ensure(std::isfinite(gv) && gv > 0.0,
           "measure_nodes: g(u) must be finite and positive; at u = " +
               std::to_string(out.u[i]) + " got " + std::to_string(gv));
    const bool noncritical = out.dens[i] > out.eps;
    double density = problem.phi.f(out.u[i]) * problem.b.eval(out.r[i]);
    if (noncritical) density += sigma * out.dens[i] / gv;
    out.mu1[i] = density * psi;
    if (noncritical)
      out.mu2_raw[i] =
          problem.a.eval(out.r[i]) * psi * std::pow(gv, problem.p - 1.0);
  }
  return out;
}

}  // namespace radineq
