#include "radineq/calculus.hpp"

#include <cmath>

namespace radineq {

double odd_power(double z, double p) {
  if (z == 0.0) return 0.0;
  double m = std::pow(std::abs(z), p - 2.0);
  return m * z;
}

namespace {

double midpoint(double a, double b, GridGrading grading) {
  if (grading == GridGrading::log_spaced) return std::sqrt(a * b);
  return 0.5 * (a + b);
}

// Derivative of w at the midpoint of cell (i, i+1): closed form when carried,
// otherwise the staggered difference quotient.
double cell_slope(const RadialProfile& w, std::size_t i, double mid) {
  if (w.has_closed_derivative()) return w.df(mid);
  return (w.values[i + 1] - w.values[i]) / (w.grid[i + 1] - w.grid[i]);
}

}  // namespace

RadialProfile radial_derivative(const RadialProfile& w) {
  w.validate();
  RadialProfile out;
  out.grid = w.grid;
  std::size_t m = w.grid.size();
  out.values.resize(m);

  if (w.has_closed_derivative()) {
    for (std::size_t i = 0; i < m; ++i) out.values[i] = w.df(w.grid[i]);
    out.f = w.df;
    return out;
  }
  if (w.has_derivative_samples()) {
    out.values = w.derivative_values;
    return out;
  }

  const auto& x = w.grid;
  const auto& y = w.values;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double h1 = x[i] - x[i - 1], h2 = x[i + 1] - x[i];
    out.values[i] = -h2 / (h1 * (h1 + h2)) * y[i - 1] +
                    (h2 - h1) / (h1 * h2) * y[i] +
                    h1 / (h2 * (h1 + h2)) * y[i + 1];
  }
  {
    double h1 = x[1] - x[0], h2 = x[2] - x[1];
    out.values[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] +
                    (h1 + h2) / (h1 * h2) * y[1] -
                    h1 / (h2 * (h1 + h2)) * y[2];
  }
  {
    double h1 = x[m - 2] - x[m - 3], h2 = x[m - 1] - x[m - 2];
    out.values[m - 1] = h2 / (h1 * (h1 + h2)) * y[m - 3] -
                        (h1 + h2) / (h1 * h2) * y[m - 2] +
                        (h1 + 2.0 * h2) / (h2 * (h1 + h2)) * y[m - 1];
  }
  return out;
}

RadialProfile p_laplace_radial(const RadialProfile& w, const WeightFunction& a,
                               double p, int n, GridGrading grading) {
  w.validate();
  ensure(p > 1.0, "p_laplace_radial: p must be > 1");
  ensure(n >= 1, "p_laplace_radial: n must be >= 1");
  std::size_t m = w.grid.size();

  // Flux a(r) |w'|^{p-2} w' r^{n-1} on the staggered midpoints.
  std::vector<double> mid(m - 1), flux(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    mid[i] = midpoint(w.grid[i], w.grid[i + 1], grading);
    double slope = cell_slope(w, i, mid[i]);
    flux[i] = a.eval(mid[i]) * odd_power(slope, p) * std::pow(mid[i], n - 1);
  }

  RadialProfile out;
  out.grid.assign(w.grid.begin() + 1, w.grid.end() - 1);
  out.values.resize(m - 2);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double dF = flux[i] - flux[i - 1];
    double dr = mid[i] - mid[i - 1];
    out.values[i - 1] = -dF / (dr * std::pow(w.grid[i], n - 1));
  }
  return out;
}

RadialProfile weighted_flux_divergence(const RadialProfile& w,
                                       const std::function<double(double)>& coeff,
                                       double p, double d_eff, GridGrading grading) {
  w.validate();
  ensure(p > 1.0, "weighted_flux_divergence: p must be > 1");
  std::size_t m = w.grid.size();

  std::vector<double> mid(m - 1), flux(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    mid[i] = midpoint(w.grid[i], w.grid[i + 1], grading);
    double slope = cell_slope(w, i, mid[i]);
    double c = coeff ? coeff(mid[i]) : 1.0;
    flux[i] = c * odd_power(slope, p) * std::pow(mid[i], d_eff - 1.0);
  }

  RadialProfile out;
  out.grid.assign(w.grid.begin() + 1, w.grid.end() - 1);
  out.values.resize(m - 2);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    double dF = flux[i] - flux[i - 1];
    double dr = mid[i] - mid[i - 1];
    out.values[i - 1] = -dF / dr;
  }
  return out;
}

RadialProfile resample_profile(const RadialProfile& u, const std::vector<double>& nodes) {
  u.validate();
  ensure(nodes.size() >= 3, "resample_profile: need at least 3 nodes");
  RadialProfile out;
  out.grid = nodes;
  out.f = u.f;
  out.df = u.df;
  out.extrapolation = u.extrapolation;
  out.tail_exponent = u.tail_exponent;
  out.values.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) out.values[i] = u.value_at(nodes[i]);
  if (u.df || u.has_derivative_samples()) {
    out.derivative_values.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out.derivative_values[i] = u.derivative_at(nodes[i]);
  } else {
    out.derivative_values = radial_derivative(out).values;
  }
  return out;
}

}  // namespace radineq
