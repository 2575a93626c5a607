#include "radineq/caccioppoli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "radineq/calculus.hpp"
#include "radineq/model.hpp"
#include "radineq/supersolution.hpp"

namespace radineq {

std::pair<double, double> young_split(double s1, double s2, double p, double tau) {
  ensure(s1 >= 0.0 && s2 >= 0.0, "young_split: factors must be nonnegative");
  ensure(tau > 0.0, "young_split: tau must be positive");
  ensure(p > 1.0, "young_split: p must exceed 1");
  const double lhs = s1 * std::pow(s2, p - 1.0);
  const double rhs = std::pow(s1, p) / (p * std::pow(tau, p - 1.0)) +
                     ((p - 1.0) / p) * tau * std::pow(s2, p);
  return {lhs, rhs};
}

namespace {

// Shared admissibility and cutoff validation for the two estimate evaluators.
// Returns the resampled cutoff; zero-cutoff short-circuits are left to the
// callers because both sides are then exactly zero.
RadialProfile check_estimate_inputs(const PDIProblem& problem, const RadialProfile& u,
                                    const PsiGPair& pair, double sigma,
                                    const RadialProfile& phi,
                                    const QuadratureGrid& grid, double eps_grad) {
  require_admissible_shift(problem, u, pair.g, sigma, pair.C, eps_grad);

  RadialProfile ph = resample_profile(phi, grid.nodes);
  double pmax = 0.0;
  for (double v : ph.values) {
    ensure(v >= 0.0, "energy estimate: cutoff must be nonnegative");
    pmax = std::max(pmax, v);
  }
  ensure(ph.values.front() <= 1e-13 * pmax && ph.values.back() <= 1e-13 * pmax,
         "energy estimate: cutoff must vanish at both ends of the grid "
         "(compact support inside the domain)");
  return ph;
}

}  // namespace

CaccioppoliReport caccioppoli_margin(const PDIProblem& problem, const RadialProfile& u,
                                     const PsiGPair& pair, double sigma,
                                     const RadialProfile& phi,
                                     const QuadratureGrid& grid, double eps_grad) {
  const RadialProfile ph = check_estimate_inputs(problem, u, pair, sigma, phi, grid, eps_grad);

  CaccioppoliReport rep;
  rep.constant = caccioppoli_constant(problem.p, pair.C, sigma);

  double pmax = 0.0;
  for (double v : ph.values) pmax = std::max(pmax, v);
  if (pmax == 0.0) return rep;  // zero cutoff: both sides vanish exactly
  const double phi_floor = 1e-12 * pmax;

  const MeasureNodes mn = measure_nodes(problem, u, pair, sigma, grid, eps_grad);
  const double p = problem.p;

  double lhs = 0.0, steep = 0.0;
  for (std::size_t i = 0; i < mn.r.size(); ++i) {
    lhs += mn.dx[i] * mn.mu1[i] * ph.values[i];
    if (ph.values[i] > phi_floor)
      steep += mn.dx[i] * mn.mu2_raw[i] *
               std::pow(std::abs(ph.derivative_values[i]), p) *
               std::pow(ph.values[i], 1.0 - p);
  }
  ensure(std::isfinite(steep),
         "energy estimate: the cutoff steepness integral "
         "|phi'|^p phi^{1-p} diverges on this grid");
  rep.lhs = lhs;
  rep.rhs = rep.constant * steep;
  return rep;
}

LocalEstimateReport local_estimate_margin(const PDIProblem& problem,
                                          const RadialProfile& u,
                                          const PsiGPair& pair, double sigma,
                                          const RadialProfile& phi, double R,
                                          const QuadratureGrid& grid,
                                          double eps_grad) {
  ensure(R > 0.0, "local estimate: cap R must be positive");
  const RadialProfile ph = check_estimate_inputs(problem, u, pair, sigma, phi, grid, eps_grad);
  const double c = caccioppoli_constant(problem.p, pair.C, sigma);

  LocalEstimateReport rep;

  double pmax = 0.0;
  for (double v : ph.values) pmax = std::max(pmax, v);
  const double phi_floor = 1e-12 * pmax;

  const MeasureNodes mn = measure_nodes(problem, u, pair, sigma, grid, eps_grad);
  const double p = problem.p;

  double lhs = 0.0, steep = 0.0, flux_layer = 0.0, load_layer = 0.0;
  for (std::size_t i = 0; i < mn.r.size(); ++i) {
    const bool capped = mn.u[i] < R;  // {0 < u} is already folded into mu1/mu2
    if (capped) {
      lhs += mn.dx[i] * mn.mu1[i] * ph.values[i];
      if (pmax > 0.0 && ph.values[i] > phi_floor)
        steep += mn.dx[i] * mn.mu2_raw[i] *
                 std::pow(std::abs(ph.derivative_values[i]), p) *
                 std::pow(ph.values[i], 1.0 - p);
    }
    if (mn.u[i] >= 0.5 * R) {
      flux_layer += mn.dx[i] * problem.a.eval(mn.r[i]) *
                    std::pow(std::abs(mn.du[i]), p - 1.0) *
                    std::abs(ph.derivative_values[i]);
      load_layer += mn.dx[i] * problem.phi.f(mn.u[i]) *
                    problem.b.eval(mn.r[i]) * ph.values[i];
    }
  }
  ensure(std::isfinite(steep),
         "local estimate: the cutoff steepness integral diverges on this grid");

  rep.correction = pair.psi.f(R) * (flux_layer - load_layer);
  rep.lhs = lhs;
  rep.rhs = c * steep + rep.correction;
  return rep;
}

RadialProfile truncate_profile(const RadialProfile& u, double delta, double R) {
  ensure(delta > 0.0, "truncate_profile: delta must be positive");
  ensure(delta < R, "truncate_profile: requires delta < R");
  u.validate();

  RadialProfile out = u;
  const bool has_dv = u.has_derivative_samples();
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const bool binds = u.values[i] + delta >= R;
    out.values[i] = binds ? R : u.values[i] + delta;
    if (has_dv) out.derivative_values[i] = binds ? 0.0 : u.derivative_values[i];
  }
  if (u.f) {
    out.f = [f = u.f, delta, R](double r) { return std::min(f(r) + delta, R); };
    if (u.df)
      out.df = [f = u.f, df = u.df, delta, R](double r) {
        return f(r) + delta >= R ? 0.0 : df(r);
      };
  }
  // A capped profile is bounded; a power tail no longer describes it.
  out.extrapolation = RadialProfile::Extrapolation::clamp;
  out.tail_exponent = 0.0;
  return out;
}

}  // namespace radineq
