#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types: radial domains, sampled radial profiles, the closed
// weight algebra, auxiliary (Psi, g) pairs, problem instances, and the
// containers produced by the inequality constructors.

namespace radineq {

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

enum class DomainKind { ball, annulus, full_space_truncated, interval_1d };

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

struct RadialDomain {
  int n = 3;
  double r_min = 1e-6;
  double r_max = 1e3;
  DomainKind kind = DomainKind::full_space_truncated;

  void validate() const;
};

// A scalar function of one variable with an optional analytic derivative.
// When df is absent, consumers fall back to finite differences.
struct ScalarFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::string name;

  double operator()(double t) const { return f(t); }
  bool has_derivative() const { return static_cast<bool>(df); }
};

ScalarFunction sf_power(double q);            // t^q
ScalarFunction sf_identity();                 // t
ScalarFunction sf_constant(double k);         // k
ScalarFunction sf_exp_neg();                  // e^{-t}
ScalarFunction sf_exp_neg_over_t();           // e^{-t}/t
ScalarFunction sf_inv_t_log(double a);        // (t log(a+t))^{-1}
ScalarFunction sf_t_log(double a);            // t log(a+t)
ScalarFunction sf_shifted_saturating(double c); // c + t/(1+t)

// Radial scalar field sampled on a strictly increasing grid.  Optional
// closed forms make off-grid evaluation (and derivatives) exact.
struct RadialProfile {
  enum class Extrapolation { clamp, power_tail };

  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivative_values;  // empty when absent
  Extrapolation extrapolation = Extrapolation::clamp;
  double tail_exponent = 0.0;

  std::function<double(double)> f;   // optional closed form
  std::function<double(double)> df;  // optional closed-form derivative

  bool has_derivative_samples() const { return !derivative_values.empty(); }
  bool has_closed_form() const { return static_cast<bool>(f); }
  bool has_closed_derivative() const { return static_cast<bool>(df); }

  std::size_t size() const { return grid.size(); }
  double max_abs_value() const;

  // Closed form when present, otherwise piecewise-linear interpolation with
  // the declared extrapolation outside the grid.  Node hits are exact.
  double value_at(double r) const;
  double derivative_at(double r) const;

  void validate() const;
};

RadialProfile sample_on_grid(const std::vector<double>& grid,
                             const std::function<double(double)>& f,
                             const std::function<double(double)>& df = nullptr);

// Closed algebra of radial weights: constant, power r^alpha, the
// (1+r^{p/(p-1)})-type family, the interpolating v1 family, finite products,
// tabulated data, and (for library/test use only) an arbitrary closure.
struct WeightFunction {
  enum class Kind { constant, power, talenti_family, hp_v1, product, tabulated, custom };

  Kind kind = Kind::constant;
  double kappa = 1.0;    // constant
  double alpha = 0.0;    // power: r^alpha
  double gamma = 0.0;    // talenti_family / hp_v1
  double p = 2.0;        // talenti_family / hp_v1
  double r_param = 0.0;  // hp_v1
  std::vector<WeightFunction> factors;  // product
  RadialProfile table;                  // tabulated (may be signed)
  std::function<double(double)> fn;     // custom
  std::string label;

  double operator()(double r) const { return eval(r); }
  double eval(double r) const;
  bool signed_allowed() const { return kind == Kind::tabulated || kind == Kind::custom; }
  std::string describe() const;

  static WeightFunction constant_w(double k);
  static WeightFunction power_w(double alpha);
  static WeightFunction talenti_family_w(double gamma, double p);
  static WeightFunction hp_v1_w(double gamma, double p, double r_param);
  static WeightFunction product_w(std::vector<WeightFunction> fs);
  static WeightFunction tabulated_w(RadialProfile table);
  static WeightFunction custom_w(std::function<double(double)> fn, std::string label);
};

enum class PsiMonotonicity { nonincreasing, increasing };
enum class ThetaBehavior { nonincreasing_near_0, bounded_near_0, fails_both };

std::string to_string(ThetaBehavior b);

// Auxiliary pair (Psi, g) with its compatibility constant C:
// g(t) Psi'(t) <= -C Psi(t) on (0, infinity).
struct PsiGPair {
  ScalarFunction psi;
  ScalarFunction g;
  double C = 1.0;
  PsiMonotonicity psi_monotonicity = PsiMonotonicity::nonincreasing;
  std::string name;
};

// Problem instance for -div(a |grad u|^{p-2} grad u) >= b Phi(u).
struct PDIProblem {
  RadialDomain domain;
  double p = 2.0;
  WeightFunction a;
  WeightFunction b;      // may be signed (tabulated/custom)
  ScalarFunction phi;

  void validate() const;
};

// Result of the admissible-shift computation.  sigma0 may be +infinity
// (no admissible shift at grid resolution).  For constant profiles every
// shift is admissible; that is reported as -infinity plus the flag and the
// sentinel is never consumed downstream.
struct SigmaResult {
  double sigma0 = 0.0;
  double admissible_upper_C = 0.0;
  bool constant_profile = false;
  // True when doubling the evaluation nodes moves the supremum by < 1%.
  bool certified = false;

  bool infinite() const { return std::isinf(sigma0) && sigma0 > 0; }
};

enum class Sharpness { proved_by_eigenfunction, unknown, not_applicable };

std::string to_string(Sharpness s);

// A constructed Hardy inequality: node-tabulated densities mu1 (signed) and
// mu2 (nonnegative, with the multiplicative constant kept separate so the
// raw weight ratio stays comparable to named constants).
struct HardyData {
  std::vector<double> nodes;
  std::vector<double> mu1;
  std::vector<double> mu2_raw;
  double constant = 1.0;
  double p = 2.0;
  Sharpness sharpness = Sharpness::unknown;
  std::string provenance;

  double mu1_at(double r) const;
  double mu2_raw_at(double r) const;
  void validate() const;
};

}  // namespace radineq
