#pragma once

#include <utility>

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Critical exponent p(n - beta)/(n - p) for beta < p < n.
double p_star_beta(int n, double p, double beta);

// Explicit decaying profile u(r) = c (1 + r^{(p-beta)/(p-1)})^{-(n-p)/(p-beta)}
// solving -div(|grad u|^{p-2} grad u) = gamma |x|^{-beta} u^{p*_beta - 1}.
// The scale c = [((n-beta)/gamma) ((n-p)/(p-1))^{p-1}]^{1/(p*_beta - p)} is
// pinned by substituting the profile into the equation (the residual tests
// certify it for every shipped parameter set).
RadialProfile make_talenti_profile(int n, double p, double beta, double gamma,
                                   const std::vector<double>& grid);

// Scale constant alone (useful for oracles and reports).
double talenti_scale_constant(int n, double p, double beta, double gamma);

// Weight pair v1, v2 of the interpolating weighted Hardy family.
std::pair<WeightFunction, WeightFunction> make_hp_weights(int n, double p, double gamma,
                                                          double r_param);

enum class OptimalityFlag { optimal, unknown };

std::string to_string(OptimalityFlag f);

struct HpConstant {
  double value = 0.0;
  OptimalityFlag optimal = OptimalityFlag::unknown;
};

// Explicit constant n (p/(p-1))^{p-1} (gamma - 1 + (n/p)(1 - r_param))^{p-1}
// for the weight pair above.  The optimality flag is `optimal` only in the
// regimes where it is established (gamma > n r_param + 1 - n/p, or
// r_param = 1 with gamma = 1 + n(1 - 1/p)); everywhere else it is `unknown`.
HpConstant hp_constant(int n, double p, double gamma, double r_param);

// Closed form n (p (gamma-1)/(p-1))^{p-1} valid at r_param = 1, gamma > 1.
double hp_constant_r1(int n, double p, double gamma);

// (p-1)^{p-1} / (p^p (C - sigma)^{p-1}); requires sigma < C.
double caccioppoli_constant(double p, double C, double sigma);

// ((p-1)/(C - sigma))^{p-1}; requires sigma < C.
double hardy_mu2_constant(double p, double C, double sigma);

}  // namespace radineq
