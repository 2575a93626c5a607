#pragma once

#include <functional>

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

// Radial change of variables linking the unweighted p-Laplace equation
//   -div(|grad u|^{p-2} grad u) = gamma |x|^{-beta} |u|^{p*_beta - 2} u
// for radial u(x) = w(|x|) to a two-weight ODE in the stretched variable
//   t(r) = (p / (p - beta)) r^{(p - beta)/p}    (beta < p),
// namely  -(t^{m-1} |v'|^{p-2} v')' = gamma t^{m-1} |v|^{p*_beta - 2} v
// with v(t) = w(r(t)) and the effective radial dimension
//   m = p (n - beta) / (p - beta),
// which reduces to m = n at beta = 0.  The residual evaluator certifies the
// pairing numerically instead of relying on the symbolic derivation.

namespace radineq {

// Forward/inverse stretching as evaluable records.
struct RadialMap {
  double beta = 0.0;
  double p = 2.0;
  std::function<double(double)> t_of_r;  // (p/(p-beta)) r^{(p-beta)/p}
  std::function<double(double)> r_of_t;  // ((p-beta) t / p)^{p/(p-beta)}
  std::function<double(double)> dt_dr;   // r^{-beta/p} (infinite at r = 0 when beta > 0)
};

struct TransformedProfile {
  RadialProfile v;  // tabulated on the image grid t_i = t(r_i)
  RadialMap map;
};

// Effective radial dimension p (n - beta) / (p - beta) of the transformed
// equation.  Requires beta < p.
double transformed_dimension(int n, double p, double beta);

// Stretches a radial profile into the t variable.  The t-grid is the image
// of w's own grid under t(r), so node values carry over without resampling;
// derivative samples follow the chain rule dv/dt = w'(r) r^{beta/p}, and any
// closed forms on w are composed with the inverse map.  Requires beta < p,
// p > 1, and a nonnegative grid.
TransformedProfile radial_change_of_variable(double beta, double p,
                                             const RadialProfile& w);

// Strong-form residual density
//   -(t^{m-1} |v'|^{p-2} v')' - gamma t^{m-1} |v|^{p*_beta - 2} v
// on the interior nodes of `grid` (v is resampled when its tabulation
// differs).  A vanishing residual certifies that v is the stretched image of
// a solution of the equation above.  Requires beta < p < n.
RadialProfile transformed_residual(const RadialProfile& v, int n, double p,
                                   double gamma, double beta,
                                   const QuadratureGrid& grid);

}  // namespace radineq
