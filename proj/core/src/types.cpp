#include "radineq/types.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace radineq {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Shared piecewise-linear evaluation.  Exact on node hits so that repeated
// evaluation at grid nodes reproduces the stored samples bit for bit.
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x,
              RadialProfile::Extrapolation extrap, double tail_exponent) {
  if (x <= xs.front()) {
    if (x == xs.front() || extrap == RadialProfile::Extrapolation::clamp) return ys.front();
    return ys.front() * std::pow(x / xs.front(), tail_exponent);
  }
  if (x >= xs.back()) {
    if (x == xs.back() || extrap == RadialProfile::Extrapolation::clamp) return ys.back();
    return ys.back() * std::pow(x / xs.back(), tail_exponent);
  }
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  if (xs[hi] == x) return ys[hi];
  std::size_t lo = hi - 1;
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::ball: return "ball";
    case DomainKind::annulus: return "annulus";
    case DomainKind::full_space_truncated: return "full-space-truncated";
    case DomainKind::interval_1d: return "interval-1d";
  }
  return "?";
}

DomainKind domain_kind_from_string(const std::string& s) {
  if (s == "ball") return DomainKind::ball;
  if (s == "annulus") return DomainKind::annulus;
  if (s == "full-space-truncated") return DomainKind::full_space_truncated;
  if (s == "interval-1d") return DomainKind::interval_1d;
  throw std::invalid_argument("unknown domain kind '" + s + "'");
}

void RadialDomain::validate() const {
  ensure(n >= 1, "domain: n must be >= 1");
  ensure(r_min >= 0.0, "domain: r_min must be >= 0");
  ensure(r_min < r_max, "domain: r_min must be < r_max");
  if (kind == DomainKind::interval_1d)
    ensure(n == 1, "domain: interval-1d forces n = 1");
}

ScalarFunction sf_power(double q) {
  return {[q](double t) { return std::pow(t, q); },
          [q](double t) { return q * std::pow(t, q - 1.0); },
          "power(" + fmt_num(q) + ")"};
}

ScalarFunction sf_identity() {
  return {[](double t) { return t; }, [](double) { return 1.0; }, "identity"};
}

ScalarFunction sf_constant(double k) {
  return {[k](double) { return k; }, [](double) { return 0.0; },
          "constant(" + fmt_num(k) + ")"};
}

ScalarFunction sf_exp_neg() {
  return {[](double t) { return std::exp(-t); },
          [](double t) { return -std::exp(-t); }, "exp_neg"};
}

ScalarFunction sf_exp_neg_over_t() {
  return {[](double t) { return std::exp(-t) / t; },
          [](double t) { return -std::exp(-t) * (1.0 + 1.0 / t) / t; },
          "exp_neg_over_t"};
}

ScalarFunction sf_inv_t_log(double a) {
  return {[a](double t) { return 1.0 / (t * std::log(a + t)); },
          [a](double t) {
            double L = std::log(a + t);
            return -(L + t / (a + t)) / (t * t * L * L);
          },
          "inv_t_log(" + fmt_num(a) + ")"};
}

ScalarFunction sf_t_log(double a) {
  return {[a](double t) { return t * std::log(a + t); },
          [a](double t) { return std::log(a + t) + t / (a + t); },
          "t_log(" + fmt_num(a) + ")"};
}

ScalarFunction sf_shifted_saturating(double c) {
  return {[c](double t) { return c + t / (1.0 + t); },
          [](double t) { return 1.0 / ((1.0 + t) * (1.0 + t)); },
          "shifted_saturating(" + fmt_num(c) + ")"};
}

double RadialProfile::max_abs_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialProfile::value_at(double r) const {
  if (f) return f(r);
  return interp(grid, values, r, extrapolation, tail_exponent);
}

double RadialProfile::derivative_at(double r) const {
  if (df) return df(r);
  ensure(has_derivative_samples(), "profile: no derivative available");
  return interp(grid, derivative_values, r, Extrapolation::clamp, 0.0);
}

void RadialProfile::validate() const {
  ensure(grid.size() >= 3, "profile: grid needs at least 3 nodes");
  ensure(grid.size() == values.size(), "profile: grid/value length mismatch");
  if (!derivative_values.empty())
    ensure(derivative_values.size() == grid.size(),
           "profile: derivative length mismatch");
  for (std::size_t i = 1; i < grid.size(); ++i)
    ensure(grid[i] > grid[i - 1], "profile: grid must be strictly increasing");
}

RadialProfile sample_on_grid(const std::vector<double>& grid,
                             const std::function<double(double)>& f,
                             const std::function<double(double)>& df) {
  RadialProfile out;
  out.grid = grid;
  out.values.reserve(grid.size());
  for (double r : grid) out.values.push_back(f(r));
  if (df) {
    out.derivative_values.reserve(grid.size());
    for (double r : grid) out.derivative_values.push_back(df(r));
    out.df = df;
  }
  out.f = f;
  out.validate();
  return out;
}

double WeightFunction::eval(double r) const {
  switch (kind) {
    case Kind::constant: return kappa;
    case Kind::power: return std::pow(r, alpha);
    case Kind::talenti_family: {
      double q = p / (p - 1.0);
      return std::pow(1.0 + std::pow(r, q), (p - 1.0) * gamma);
    }
    case Kind::hp_v1: {
      double q = p / (p - 1.0);
      double rq = std::pow(r, q);
      return (1.0 + r_param * rq) * std::pow(1.0 + rq, gamma * (p - 1.0) - p);
    }
    case Kind::product: {
      double v = 1.0;
      for (const auto& f : factors) v *= f.eval(r);
      return v;
    }
    case Kind::tabulated: return table.value_at(r);
    case Kind::custom: return fn(r);
  }
  return 0.0;
}

std::string WeightFunction::describe() const {
  if (!label.empty()) return label;
  switch (kind) {
    case Kind::constant: return "constant(" + fmt_num(kappa) + ")";
    case Kind::power: return "power(" + fmt_num(alpha) + ")";
    case Kind::talenti_family:
      return "talenti_family(gamma=" + fmt_num(gamma) + ",p=" + fmt_num(p) + ")";
    case Kind::hp_v1:
      return "hp_v1(gamma=" + fmt_num(gamma) + ",p=" + fmt_num(p) +
             ",r_param=" + fmt_num(r_param) + ")";
    case Kind::product: {
      std::string s;
      for (const auto& f : factors) {
        if (!s.empty()) s += " * ";
        s += f.describe();
      }
      return s;
    }
    case Kind::tabulated: return "tabulated(" + std::to_string(table.size()) + " nodes)";
    case Kind::custom: return "custom";
  }
  return "?";
}

WeightFunction WeightFunction::constant_w(double k) {
  WeightFunction w;
  w.kind = Kind::constant;
  w.kappa = k;
  return w;
}

WeightFunction WeightFunction::power_w(double alpha) {
  WeightFunction w;
  w.kind = Kind::power;
  w.alpha = alpha;
  return w;
}

WeightFunction WeightFunction::talenti_family_w(double gamma, double p) {
  ensure(p > 1.0, "talenti_family: p must be > 1");
  WeightFunction w;
  w.kind = Kind::talenti_family;
  w.gamma = gamma;
  w.p = p;
  return w;
}

WeightFunction WeightFunction::hp_v1_w(double gamma, double p, double r_param) {
  ensure(p > 1.0, "hp_v1: p must be > 1");
  WeightFunction w;
  w.kind = Kind::hp_v1;
  w.gamma = gamma;
  w.p = p;
  w.r_param = r_param;
  return w;
}

WeightFunction WeightFunction::product_w(std::vector<WeightFunction> fs) {
  ensure(!fs.empty(), "product weight needs at least one factor");
  WeightFunction w;
  w.kind = Kind::product;
  w.factors = std::move(fs);
  return w;
}

WeightFunction WeightFunction::tabulated_w(RadialProfile table) {
  table.validate();
  WeightFunction w;
  w.kind = Kind::tabulated;
  w.table = std::move(table);
  return w;
}

WeightFunction WeightFunction::custom_w(std::function<double(double)> fn, std::string label) {
  ensure(static_cast<bool>(fn), "custom weight needs a callable");
  WeightFunction w;
  w.kind = Kind::custom;
  w.fn = std::move(fn);
  w.label = std::move(label);
  return w;
}

std::string to_string(ThetaBehavior b) {
  switch (b) {
    case ThetaBehavior::nonincreasing_near_0: return "nonincreasing-near-0";
    case ThetaBehavior::bounded_near_0: return "bounded-near-0";
    case ThetaBehavior::fails_both: return "fails-both";
  }
  return "?";
}

void PDIProblem::validate() const {
  domain.validate();
  ensure(p > 1.0, "problem: p must be > 1");
  ensure(static_cast<bool>(phi.f), "problem: nonlinearity must be callable");
}

std::string to_string(Sharpness s) {
  switch (s) {
    case Sharpness::proved_by_eigenfunction: return "proved-by-eigenfunction";
    case Sharpness::unknown: return "unknown";
    case Sharpness::not_applicable: return "not-applicable";
  }
  return "?";
}

double HardyData::mu1_at(double r) const {
  return interp(nodes, mu1, r, RadialProfile::Extrapolation::clamp, 0.0);
}

double HardyData::mu2_raw_at(double r) const {
  return interp(nodes, mu2_raw, r, RadialProfile::Extrapolation::clamp, 0.0);
}

void HardyData::validate() const {
  ensure(nodes.size() >= 3, "hardy data: needs at least 3 nodes");
  ensure(nodes.size() == mu1.size() && nodes.size() == mu2_raw.size(),
         "hardy data: density length mismatch");
  ensure(constant > 0.0, "hardy data: constant must be positive");
  ensure(p > 1.0, "hardy data: p must be > 1");
  for (double v : mu2_raw)
    ensure(v >= 0.0, "hardy data: mu2 density must be nonnegative");
}

}  // namespace radineq
