#include "radineq/model.hpp"

#include <cmath>
#include <sstream>

namespace radineq {

double p_star_beta(int n, double p, double beta) {
  ensure(beta < p && p < n, "p_star_beta: requires beta < p < n");
  return p * (n - beta) / (n - p);
}

double talenti_scale_constant(int n, double p, double beta, double gamma) {
  ensure(p > 1.0, "talenti profile: p must be > 1");
  ensure(beta < p && p < n, "talenti profile: requires beta < p < n");
  ensure(gamma > 0.0, "talenti profile: gamma must be positive");
  double base = ((n - beta) / gamma) * std::pow((n - p) / (p - 1.0), p - 1.0);
  // Exponent 1/(p*_beta - p): substituting the profile into the equation
  // gives c^{p-1} * (equation scale) = gamma * c^{p*_beta - 1}.
  double ps = p_star_beta(n, p, beta);
  return std::pow(base, 1.0 / (ps - p));
}

RadialProfile make_talenti_profile(int n, double p, double beta, double gamma,
                                   const std::vector<double>& grid) {
  double c = talenti_scale_constant(n, p, beta, gamma);
  double q = (p - beta) / (p - 1.0);
  double outer = (n - p) / (p - beta);
  auto f = [c, q, outer](double r) {
    return c * std::pow(1.0 + std::pow(r, q), -outer);
  };
  auto df = [c, q, outer](double r) {
    return -c * outer * q * std::pow(r, q - 1.0) *
           std::pow(1.0 + std::pow(r, q), -outer - 1.0);
  };
  return sample_on_grid(grid, f, df);
}

std::string to_string(OptimalityFlag f) {
  return f == OptimalityFlag::optimal ? "optimal" : "unknown";
}

namespace {

void check_hp_preconditions(int n, double p, double gamma, double r_param) {
  ensure(p > 1.0, "hp weights: p must be > 1");
  ensure(n >= 1, "hp weights: n must be >= 1");
  double gamma_lo = 1.0 - static_cast<double>(n) / p;
  if (!(gamma > gamma_lo)) {
    std::ostringstream os;
    os << "hp weights: gamma must exceed 1 - n/p = " << gamma_lo;
    throw std::invalid_argument(os.str());
  }
  double r_hi = 1.0 - p / n + gamma * p / n;
  if (!(r_param > 0.0 && r_param < r_hi)) {
    std::ostringstream os;
    os << "hp weights: r_param must lie in (0, " << r_hi << "), got " << r_param;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

std::pair<WeightFunction, WeightFunction> make_hp_weights(int n, double p, double gamma,
                                                          double r_param) {
  check_hp_preconditions(n, p, gamma, r_param);
  WeightFunction v1 = WeightFunction::hp_v1_w(gamma, p, r_param);
  WeightFunction v2 = WeightFunction::talenti_family_w(gamma, p);
  return {v1, v2};
}

HpConstant hp_constant(int n, double p, double gamma, double r_param) {
  check_hp_preconditions(n, p, gamma, r_param);
  double base = gamma - 1.0 + (n / p) * (1.0 - r_param);
  HpConstant out;
  out.value = n * std::pow(p * base / (p - 1.0), p - 1.0);
  bool regime1 = gamma > n * r_param + 1.0 - n / p;
  bool regime2 = (r_param == 1.0) && (gamma == 1.0 + n * (1.0 - 1.0 / p));
  out.optimal = (regime1 || regime2) ? OptimalityFlag::optimal : OptimalityFlag::unknown;
  return out;
}

double hp_constant_r1(int n, double p, double gamma) {
  ensure(gamma > 1.0, "hp constant closed form: requires gamma > 1");
  return n * std::pow(p * (gamma - 1.0) / (p - 1.0), p - 1.0);
}

double caccioppoli_constant(double p, double C, double sigma) {
  ensure(p > 1.0, "caccioppoli constant: p must be > 1");
  ensure(sigma < C,
         "caccioppoli constant: shift must satisfy sigma < C (admissible range)");
  return std::pow((p - 1.0) / (C - sigma), p - 1.0) / std::pow(p, p);
}

double hardy_mu2_constant(double p, double C, double sigma) {
  ensure(p > 1.0, "mu2 constant: p must be > 1");
  ensure(sigma < C, "mu2 constant: shift must satisfy sigma < C (admissible range)");
  return std::pow((p - 1.0) / (C - sigma), p - 1.0);
}

}  // namespace radineq
