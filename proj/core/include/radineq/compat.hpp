#pragma once

#include <string>
#include <vector>

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

namespace radineq {

// Local integrability of a^{-1/(p-1)}.  For power-law weights on domains
// whose closure touches the origin the exact exponent criterion decides;
// every other weight goes through nested-annulus quadrature that must be
// finite and stable under two successive grid refinements (1% ratio rule).
struct BpReport {
  bool holds = false;
  // Row-major over [annulus][refinement]: three nested sub-annuli whose
  // inner edge marches toward the domain's inner boundary, each integrated
  // at three resolutions (m, 2m, 4m).
  std::vector<double> integral_samples;
  bool used_analytic_power_rule = false;
  std::string note;
};

BpReport check_bp_weight(const WeightFunction& a, double p, const RadialDomain& domain,
                         const QuadratureGrid& grid);

struct PsiGReport {
  bool holds = false;
  double max_C = 0.0;   // inf over samples of -g(t) psi'(t) / psi(t)
  double worst_t = 0.0; // sample attaining the infimum
};

// Verifies g(t) psi'(t) <= -C psi(t) on the sample set; `tol` is the
// relative slack g psi' + C psi <= tol * psi admitted at each sample.
PsiGReport check_psi_g_condition(const PsiGPair& pair, const std::vector<double>& sample_grid,
                                 double tol = 1e-8);

struct ThetaReport {
  ThetaBehavior theta = ThetaBehavior::fails_both;       // psi * g^{p-1}
  ThetaBehavior psi_over_g = ThetaBehavior::fails_both;  // psi / g
  bool acceptable() const {
    return theta != ThetaBehavior::fails_both && psi_over_g != ThetaBehavior::fails_both;
  }
};

ThetaReport check_theta_behavior(const PsiGPair& pair, double p,
                                 const std::vector<double>& t_probe);

struct TailReport {
  std::vector<double> Z1_values;  // psi(R) * integral of a |u'|^{p-1} over K cap {u >= R/2}
  std::vector<double> Z2_values;  // psi(R) * integral of phi(u) b   over K cap {u >= R/2}
  bool converges = false;
};

TailReport check_vanishing_tails(const RadialProfile& u, const WeightFunction& a,
                                 const WeightFunction& b, const ScalarFunction& phi, double p,
                                 const PsiGPair& pair, const RadialDomain& K,
                                 const std::vector<double>& R_sequence);

// Built-in pair families, each with its best admissible constant.
PsiGPair pair_power(double alpha);            // psi = t^{-alpha}, g = t, C = alpha
PsiGPair pair_log_damped(double a);           // psi = (t log(a+t))^{-1}, g = t log(a+t), C = log a
PsiGPair pair_exp_saturating(double c);       // psi = e^{-t}, g = c + t/(1+t), C = c
PsiGPair pair_exp_over_t();                   // psi = e^{-t}/t, g = t/(1+t), C = 1

// The four canonical instances used throughout the test-suite.
std::vector<PsiGPair> standard_pairs();

}  // namespace radineq
