#include "radineq/supersolution.hpp"

#include <algorithm>
#include <cmath>

#include "radineq/calculus.hpp"

namespace radineq {

RadialProfile strong_residual(const PDIProblem& problem, const RadialProfile& u,
                              const QuadratureGrid& grid) {
  problem.validate();
  RadialProfile w = resample_profile(u, grid.nodes);
  for (double v : w.values)
    ensure(v >= 0.0, "strong_residual: u must be nonnegative on the grid");

  RadialProfile field =
      p_laplace_radial(w, problem.a, problem.p, problem.domain.n, grid.grading);
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    double r = field.grid[i];
    field.values[i] -= problem.b.eval(r) * problem.phi.f(w.values[i + 1]);
  }
  return field;
}

double weak_form_margin(const PDIProblem& problem, const RadialProfile& u,
                        const RadialProfile& w, const QuadratureGrid& grid) {
  problem.validate();
  RadialProfile uu = resample_profile(u, grid.nodes);
  RadialProfile ww = resample_profile(w, grid.nodes);

  double wmax = ww.max_abs_value();
  for (double v : ww.values)
    ensure(v >= -1e-13 * wmax, "weak_form_margin: test function must be nonnegative");
  if (wmax > 0.0) {
    bool inner_ok = std::abs(ww.values.front()) <= 1e-13 * wmax;
    bool outer_ok = std::abs(ww.values.back()) <= 1e-13 * wmax;
    ensure(inner_ok && outer_ok,
           "weak_form_margin: test function must vanish near both boundary radii "
           "(compact support)");
  }

  std::vector<double> W = dx_weights(grid, problem.domain);
  double flux = 0.0, load = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    double r = grid.nodes[i];
    flux += W[i] * problem.a.eval(r) * odd_power(uu.derivative_values[i], problem.p) *
            ww.derivative_values[i];
    load += W[i] * problem.phi.f(uu.values[i]) * problem.b.eval(r) * ww.values[i];
  }
  return flux - load;
}

namespace {

struct SigmaPass {
  double sigma = -std::numeric_limits<double>::infinity();
  bool any_noncritical = false;
  bool forced_infinite = false;
};

SigmaPass sigma_over_nodes(const PDIProblem& problem, const ScalarFunction& g,
                           const std::vector<double>& r, const std::vector<double>& uv,
                           const std::vector<double>& dv, double eps_grad) {
  double dmax = 0.0, umax = 0.0;
  std::vector<double> dens(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    dens[i] = problem.a.eval(r[i]) * std::pow(std::abs(dv[i]), problem.p);
    dmax = std::max(dmax, dens[i]);
    umax = std::max(umax, uv[i]);
  }
  double eps = eps_grad > 0.0 ? eps_grad : 1e-10 * dmax;
  double u_floor = 1e-14 * umax;

  SigmaPass out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (uv[i] <= u_floor) continue;  // outside {u > 0}
    double phib = problem.phi.f(uv[i]) * problem.b.eval(r[i]);
    if (dens[i] > eps) {
      double gv = g.f(uv[i]);
      ensure(gv > 0.0, "compute_sigma0: g must be positive on the range of u");
      out.any_noncritical = true;
      out.sigma = std::max(out.sigma, -phib * gv / dens[i]);
    } else if (phib < 0.0) {
      out.forced_infinite = true;  // no shift can compensate a critical node
    }
  }
  return out;
}

double finish(const SigmaPass& pass, bool* constant_profile) {
  *constant_profile = !pass.any_noncritical;
  if (pass.forced_infinite) return std::numeric_limits<double>::infinity();
  if (!pass.any_noncritical) return -std::numeric_limits<double>::infinity();
  return pass.sigma + 0.0;  // normalizes -0 to +0
}

}  // namespace

SigmaResult compute_sigma0(const PDIProblem& problem, const RadialProfile& u,
                           const ScalarFunction& g, double eps_grad) {
  problem.validate();
  RadialProfile base = resample_profile(u, u.grid);

  SigmaResult res;
  SigmaPass coarse =
      sigma_over_nodes(problem, g, base.grid, base.values, base.derivative_values, eps_grad);
  res.sigma0 = finish(coarse, &res.constant_profile);

  // Certification: doubling the evaluation set must move the supremum < 1%.
  std::vector<double> fine;
  fine.reserve(2 * base.grid.size() - 1);
  for (std::size_t i = 0; i < base.grid.size(); ++i) {
    fine.push_back(base.grid[i]);
    if (i + 1 < base.grid.size()) {
      double lo = base.grid[i], hi = base.grid[i + 1];
      fine.push_back(lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi));
    }
  }
  RadialProfile ref = resample_profile(base, fine);
  SigmaPass refined =
      sigma_over_nodes(problem, g, ref.grid, ref.values, ref.derivative_values, eps_grad);
  bool cp_ref = false;
  double sigma_ref = finish(refined, &cp_ref);
  res.certified = (sigma_ref == res.sigma0) ||
                  std::abs(sigma_ref - res.sigma0) <= 0.01 * std::max(std::abs(res.sigma0), 1e-12);
  return res;
}

void require_admissible_shift(const PDIProblem& problem, const RadialProfile& u,
                              const ScalarFunction& g, double sigma, double C,
                              double eps_grad) {
  const SigmaResult s0 = compute_sigma0(problem, u, g, eps_grad);
  ensure(!s0.infinite(),
         "shift admissibility: no admissible shift exists (a critical node "
         "carries negative load, pushing the threshold to +infinity)");
  if (!s0.constant_profile)
    ensure(sigma >= s0.sigma0,
           "shift admissibility: sigma = " + std::to_string(sigma) +
               " lies below the threshold sigma0 = " + std::to_string(s0.sigma0));
  ensure(sigma < C, "shift admissibility: sigma = " + std::to_string(sigma) +
                        " must stay below the compatibility constant C = " +
                        std::to_string(C));
}

}  // namespace radineq
