#pragma once

#include <functional>
#include <vector>

#include "radineq/grid.hpp"
#include "radineq/types.hpp"

// Discretized minimization of the weighted p-Rayleigh quotient
//   R(xi) = integral |xi'|^p dmu2_raw / integral |xi|^p dmu1
// used to probe how close a constructed inequality's constant is to optimal.
// The multiplicative constant stored in HardyData is excluded throughout, so
// reported quotients are directly comparable to named closed-form constants.
//
// Every value reported by this module is the quotient of an explicit feasible
// discrete profile — an upper bound on the true infimum.  No extrapolation.

namespace radineq {

// Which endpoints of the grid are pinned to zero during minimization.
// free_inner and dirichlet_outer both pin only the outer end (the inner end
// varies freely); the two spellings exist because configuration files name
// the condition from either side.
enum class BoundaryCondition { dirichlet_both, dirichlet_outer, free_inner };

std::string to_string(BoundaryCondition b);
BoundaryCondition boundary_from_string(const std::string& s);

enum class InitKind { talenti_like, tent, supplied };

std::string to_string(InitKind k);
InitKind init_from_string(const std::string& s);

struct MinimizerOptions {
  int max_iterations = 500;
  // Stop once the relative quotient decrease stays below convergence_tol for
  // `patience` consecutive accepted steps.
  double convergence_tol = 1e-10;
  int patience = 5;
  // Backtracking line search: accept x - alpha d when the quotient drops by
  // at least armijo_c1 * alpha * (g . d); otherwise shrink alpha.
  double armijo_c1 = 1e-4;
  double backtrack_shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 40;
  BoundaryCondition boundary = BoundaryCondition::dirichlet_both;
  InitKind init = InitKind::talenti_like;
  // Consulted only when init == supplied; not owned.
  const RadialProfile* supplied_init = nullptr;
  // The analytic gradient of the discretized quotient is validated against
  // central finite differences at the starting iterate; relative disagreement
  // beyond this threshold aborts the run (implementation self-test).
  double grad_check_tol = 1e-5;

  void validate() const;
};

// rhs/lhs with the HardyData constant excluded.  The denominator integrates
// node values with composite-Simpson weights; the numerator integrates cell
// slopes (finite differences across consecutive nodes) against trapezoidal
// cell masses of mu2_raw, the same functional the minimizer descends on.
// Spherical volume measure in dimension n on the span of the grid.
// Throws when the denominator vanishes (test function orthogonal to mu1).
double rayleigh_quotient(const HardyData& hd, const RadialProfile& xi, int n,
                         const QuadratureGrid& grid);

struct MinimizeResult {
  double value = 0.0;        // final quotient (equals trace.back())
  RadialProfile minimizer;   // feasible discrete profile attaining `value`
  std::vector<double> trace; // accepted quotients, nonincreasing
};

// Preconditioned gradient descent with backtracking on the discrete quotient.
// Each iterate is renormalized to integral |xi|^p dmu1 = 1 (the quotient is
// 0-homogeneous, so this only conditions the arithmetic).  The returned value
// is the quotient of the returned profile: an upper bound on the infimum.
// Throws std::runtime_error when the quotient turns non-finite (message
// carries the iteration index) or the gradient self-test fails.
MinimizeResult minimize_rayleigh(const HardyData& hd, double p, int n,
                                 const QuadratureGrid& grid,
                                 const MinimizerOptions& opts = MinimizerOptions{});

struct ProbeResult {
  double best_quotient = 0.0;
  double best_param = 0.0;
  std::vector<double> params;     // evaluation order
  std::vector<double> quotients;  // quotient per parameter
};

// Evaluates the quotient across a parametric trial family and returns the
// minimum.  Family members should vanish at the outer end of the grid (apply
// a cutoff) so each value is an admissible upper bound.
ProbeResult sharpness_probe(const HardyData& hd,
                            const std::function<RadialProfile(double)>& family,
                            const std::vector<double>& param_grid, int n,
                            const QuadratureGrid& grid);

// Canonical trial family for decaying-weight problems:
//   xi_s(r) = (1 + r^{p/(p-1)})^{-s} * plateau cutoff,
// with the cutoff equal to one through [grid start, cut_start] and falling
// smoothly to zero on [cut_start, cut_end].
RadialProfile probe_trial_profile(const std::vector<double>& nodes, double p,
                                  double s, double cut_start, double cut_end);

}  // namespace radineq
