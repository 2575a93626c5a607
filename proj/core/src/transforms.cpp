#include "radineq/transforms.hpp"

#include <cmath>

#include "radineq/calculus.hpp"
#include "radineq/model.hpp"

namespace radineq {

double transformed_dimension(int n, double p, double beta) {
  ensure(n >= 1, "transformed_dimension: dimension must be at least 1");
  ensure(p > 1.0 && std::isfinite(p), "transformed_dimension: p must exceed 1");
  ensure(beta < p, "transformed_dimension: requires beta < p");
  return p * (static_cast<double>(n) - beta) / (p - beta);
}

TransformedProfile radial_change_of_variable(double beta, double p,
                                             const RadialProfile& w) {
  ensure(p > 1.0 && std::isfinite(p), "radial_change_of_variable: p must exceed 1");
  ensure(beta < p, "radial_change_of_variable: requires beta < p");
  ensure(std::isfinite(beta), "radial_change_of_variable: beta must be finite");
  w.validate();
  ensure(w.grid.front() >= 0.0,
         "radial_change_of_variable: grid must be nonnegative");

  const double stretch = (p - beta) / p;  // exponent of r in t(r)
  TransformedProfile out;
  out.map.beta = beta;
  out.map.p = p;
  if (beta == 0.0) {
    // Identity change of variables, kept exact (no pow round-off).
    out.map.t_of_r = [](double r) { return r; };
    out.map.r_of_t = [](double t) { return t; };
    out.map.dt_dr = [](double) { return 1.0; };
  } else {
    out.map.t_of_r = [stretch](double r) {
      return std::pow(r, stretch) / stretch;
    };
    out.map.r_of_t = [stretch](double t) {
      return std::pow(stretch * t, 1.0 / stretch);
    };
    out.map.dt_dr = [stretch](double r) { return std::pow(r, stretch - 1.0); };
  }

  const std::size_t m = w.grid.size();
  RadialProfile& v = out.v;
  v.grid.resize(m);
  for (std::size_t i = 0; i < m; ++i) v.grid[i] = out.map.t_of_r(w.grid[i]);
  v.values = w.values;

  // dv/dt = w'(r) / t'(r) = w'(r) r^{beta/p}; at r = 0 with beta in (0, p)
  // the factor vanishes, which is the correct limit for profiles with
  // bounded slope.
  const double chain_exp = 1.0 - stretch;  // beta / p
  std::vector<double> wd;
  if (w.has_closed_derivative() || w.has_derivative_samples()) {
    wd.resize(m);
    for (std::size_t i = 0; i < m; ++i) wd[i] = w.derivative_at(w.grid[i]);
  } else {
    wd = radial_derivative(w).values;
  }
  v.derivative_values.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    v.derivative_values[i] =
        beta == 0.0 ? wd[i] : wd[i] * std::pow(w.grid[i], chain_exp);

  v.extrapolation = w.extrapolation;
  v.tail_exponent = w.tail_exponent;
  if (w.has_closed_form()) {
    v.f = [wf = w.f, inv = out.map.r_of_t](double t) { return wf(inv(t)); };
  }
  if (w.has_closed_derivative()) {
    v.df = [wdf = w.df, inv = out.map.r_of_t, beta, chain_exp](double t) {
      const double r = inv(t);
      return beta == 0.0 ? wdf(r) : wdf(r) * std::pow(r, chain_exp);
    };
  }
  return out;
}

RadialProfile transformed_residual(const RadialProfile& v, int n, double p,
                                   double gamma, double beta,
                                   const QuadratureGrid& grid) {
  ensure(p > 1.0 && std::isfinite(p), "transformed_residual: p must exceed 1");
  ensure(beta < p, "transformed_residual: requires beta < p");
  ensure(static_cast<double>(n) > p, "transformed_residual: requires p < n");
  ensure(std::isfinite(gamma), "transformed_residual: gamma must be finite");

  const double d_eff = transformed_dimension(n, p, beta);
  const double pstar = p_star_beta(n, p, beta);

  const RadialProfile vr =
      v.grid == grid.nodes ? v : resample_profile(v, grid.nodes);
  RadialProfile out = weighted_flux_divergence(vr, {}, p, d_eff, grid.grading);
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    const double t = out.grid[i];
    out.values[i] -=
        gamma * std::pow(t, d_eff - 1.0) * odd_power(vr.values[i + 1], pstar);
  }
  return out;
}

}  // namespace radineq
