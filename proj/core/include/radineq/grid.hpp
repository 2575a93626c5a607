#pragma once

#include <functional>
#include <vector>

#include "radineq/types.hpp"

namespace radineq {

enum class GridGrading { uniform, log_spaced, hybrid };

std::string to_string(GridGrading g);
GridGrading grading_from_string(const std::string& s);

// One-dimensional composite-Simpson grid.  `weights` integrate f(r) dr on
// [nodes.front(), nodes.back()]; dimensional factors are applied separately.
struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  GridGrading grading = GridGrading::log_spaced;
  double declared_rel_tol = 1e-8;
  double split_radius = 0.0;  // hybrid only

  std::size_t size() const { return nodes.size(); }
  void validate() const;
};

// Builders round the requested size up to the nearest odd count so the
// composite Simpson rule closes.  Log grids are uniform in s = ln r with
// the Jacobian folded into the weights.
QuadratureGrid make_uniform_grid(double r_min, double r_max, int m);
QuadratureGrid make_log_grid(double r_min, double r_max, int m);
QuadratureGrid make_hybrid_grid(double r_min, double split, double r_max, int m);
QuadratureGrid make_grid_for(const RadialDomain& dom, int m, GridGrading grading);

// Surface measure of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_factor(int n);

// Per-node weights for integrals over the n-dimensional domain:
// W_i = w_i * sphere_factor(n) * r_i^{n-1}, or plain w_i for 1-d intervals.
std::vector<double> dx_weights(const QuadratureGrid& grid, const RadialDomain& dom);

double integrate_radial(const std::function<double(double)>& f,
                        const QuadratureGrid& grid, const RadialDomain& dom);

// Inner product of sampled values with precomputed dx weights.
double integrate_samples(const std::vector<double>& values,
                         const std::vector<double>& weights);

}  // namespace radineq
