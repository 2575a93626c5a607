#include "radineq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radineq {

namespace {

int make_odd(int m) {
  if (m < 3) m = 3;
  return (m % 2 == 0) ? m + 1 : m;
}

// Composite-Simpson coefficient pattern (1,4,2,...,2,4,1)/3 for an odd node
// count, scaled by the step in the integration coordinate.
std::vector<double> simpson_coeffs(int m, double h) {
  std::vector<double> c(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double s;
    if (i == 0 || i == m - 1) s = 1.0;
    else if (i % 2 == 1) s = 4.0;
    else s = 2.0;
    c[static_cast<std::size_t>(i)] = s * h / 3.0;
  }
  return c;
}

}  // namespace

std::string to_string(GridGrading g) {
  switch (g) {
    case GridGrading::uniform: return "uniform";
    case GridGrading::log_spaced: return "log";
    case GridGrading::hybrid: return "hybrid";
  }
  return "?";
}

GridGrading grading_from_string(const std::string& s) {
  if (s == "uniform") return GridGrading::uniform;
  if (s == "log" || s == "log-spaced") return GridGrading::log_spaced;
  if (s == "hybrid") return GridGrading::hybrid;
  throw std::invalid_argument("unknown grid grading '" + s + "'");
}

void QuadratureGrid::validate() const {
  ensure(nodes.size() >= 3, "grid: needs at least 3 nodes");
  ensure(nodes.size() == weights.size(), "grid: node/weight length mismatch");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    ensure(nodes[i] > nodes[i - 1], "grid: nodes must be strictly increasing");
  for (double w : weights) ensure(w > 0.0, "grid: weights must be positive");
}

QuadratureGrid make_uniform_grid(double r_min, double r_max, int m) {
  ensure(r_min < r_max, "grid: r_min must be < r_max");
  m = make_odd(m);
  double h = (r_max - r_min) / (m - 1);
  QuadratureGrid g;
  g.grading = GridGrading::uniform;
  g.nodes.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g.nodes[static_cast<std::size_t>(i)] = r_min + h * i;
  g.nodes.back() = r_max;
  g.weights = simpson_coeffs(m, h);
  g.declared_rel_tol = std::max(1e-14, 0.5 * h * h * h * h);
  return g;
}

QuadratureGrid make_log_grid(double r_min, double r_max, int m) {
  ensure(r_min > 0.0, "grid: log grading needs r_min > 0");
  ensure(r_min < r_max, "grid: r_min must be < r_max");
  m = make_odd(m);
  double s0 = std::log(r_min), s1 = std::log(r_max);
  double h = (s1 - s0) / (m - 1);
  QuadratureGrid g;
  g.grading = GridGrading::log_spaced;
  g.nodes.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    g.nodes[static_cast<std::size_t>(i)] = std::exp(s0 + h * i);
  g.nodes.front() = r_min;
  g.nodes.back() = r_max;
  g.weights = simpson_coeffs(m, h);
  // Jacobian of s = ln r.
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.weights[i] *= g.nodes[i];
  // Integrands smooth in s: composite Simpson is O(h^4) with a constant
  // that grows with the decade span; declare a conservative envelope.
  g.declared_rel_tol = std::max(1e-12, 50.0 * h * h * h * h);
  return g;
}

QuadratureGrid make_hybrid_grid(double r_min, double split, double r_max, int m) {
  ensure(r_min < split && split < r_max, "grid: hybrid split must lie inside (r_min, r_max)");
  int half = make_odd(m / 2);
  QuadratureGrid lo = make_uniform_grid(r_min, split, half);
  QuadratureGrid hi = make_log_grid(split, r_max, half);
  QuadratureGrid g;
  g.grading = GridGrading::hybrid;
  g.split_radius = split;
  g.nodes = lo.nodes;
  g.weights = lo.weights;
  // The split node appears in both panels; merge its weights.
  g.weights.back() += hi.weights.front();
  g.nodes.insert(g.nodes.end(), hi.nodes.begin() + 1, hi.nodes.end());
  g.weights.insert(g.weights.end(), hi.weights.begin() + 1, hi.weights.end());
  g.declared_rel_tol = std::max(lo.declared_rel_tol, hi.declared_rel_tol);
  return g;
}

QuadratureGrid make_grid_for(const RadialDomain& dom, int m, GridGrading grading) {
  dom.validate();
  switch (grading) {
    case GridGrading::uniform: return make_uniform_grid(dom.r_min, dom.r_max, m);
    case GridGrading::log_spaced: {
      double lo = dom.r_min;
      if (lo <= 0.0) lo = 1e-6 * dom.r_max;  // log grading never touches 0
      return make_log_grid(lo, dom.r_max, m);
    }
    case GridGrading::hybrid: {
      double split = std::sqrt(std::max(dom.r_min, 1e-12) * dom.r_max);
      return make_hybrid_grid(dom.r_min, split, dom.r_max, m);
    }
  }
  throw std::invalid_argument("grid: unknown grading");
}

double sphere_factor(int n) {
  ensure(n >= 1, "sphere_factor: n must be >= 1");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

std::vector<double> dx_weights(const QuadratureGrid& grid, const RadialDomain& dom) {
  std::vector<double> w(grid.weights);
  if (dom.kind == DomainKind::interval_1d) return w;
  double s = sphere_factor(dom.n);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] *= s * std::pow(grid.nodes[i], dom.n - 1);
  return w;
}

double integrate_radial(const std::function<double(double)>& f,
                        const QuadratureGrid& grid, const RadialDomain& dom) {
  std::vector<double> w = dx_weights(grid, dom);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    double v = f(grid.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate_radial: integrand not finite at r = " << grid.nodes[i];
      throw std::invalid_argument(os.str());
    }
    acc += w[i] * v;
  }
  return acc;
}

double integrate_samples(const std::vector<double>& values,
                         const std::vector<double>& weights) {
  ensure(values.size() == weights.size(), "integrate_samples: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
  return acc;
}

}  // namespace radineq
