#include "radineq/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "radineq/calculus.hpp"
#include "radineq/testfunctions.hpp"

namespace radineq {

std::string to_string(BoundaryCondition b) {
  switch (b) {
    case BoundaryCondition::dirichlet_both: return "dirichlet-both";
    case BoundaryCondition::dirichlet_outer: return "dirichlet-outer";
    case BoundaryCondition::free_inner: return "free-inner";
  }
  return "?";
}

BoundaryCondition boundary_from_string(const std::string& s) {
  if (s == "dirichlet-both") return BoundaryCondition::dirichlet_both;
  if (s == "dirichlet-outer") return BoundaryCondition::dirichlet_outer;
  if (s == "free-inner") return BoundaryCondition::free_inner;
  throw std::invalid_argument("unknown boundary condition: " + s);
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::talenti_like: return "talenti-like";
    case InitKind::tent: return "tent";
    case InitKind::supplied: return "supplied";
  }
  return "?";
}

InitKind init_from_string(const std::string& s) {
  if (s == "talenti-like") return InitKind::talenti_like;
  if (s == "tent") return InitKind::tent;
  if (s == "supplied") return InitKind::supplied;
  throw std::invalid_argument("unknown initialization kind: " + s);
}

void MinimizerOptions::validate() const {
  ensure(max_iterations >= 1, "max_iterations must be at least 1");
  ensure(convergence_tol > 0.0, "convergence_tol must be positive");
  ensure(patience >= 1, "patience must be at least 1");
  ensure(armijo_c1 > 0.0 && armijo_c1 < 1.0, "armijo_c1 must lie in (0, 1)");
  ensure(backtrack_shrink > 0.0 && backtrack_shrink < 1.0,
         "backtrack_shrink must lie in (0, 1)");
  ensure(initial_step > 0.0, "initial_step must be positive");
  ensure(max_backtracks >= 1, "max_backtracks must be at least 1");
  ensure(grad_check_tol > 0.0, "grad_check_tol must be positive");
  if (init == InitKind::supplied)
    ensure(supplied_init != nullptr, "supplied initialization needs a profile");
}

namespace {

// sign(t) |t|^{p-1}: the derivative of |t|^p / p, continuous at t = 0 for
// every p > 1 (zero flux through degenerate slopes).
double phi_p(double t, double p) {
  if (t == 0.0) return 0.0;
  const double mag = std::pow(std::abs(t), p - 1.0);
  return t > 0.0 ? mag : -mag;
}

// Shared discretization: node masses for the denominator, trapezoidal cell
// masses and lengths for the numerator.
struct Disc {
  double p = 2.0;
  std::vector<double> r;
  std::vector<double> bmass;  // Simpson x shell x mu1 per node
  std::vector<double> cellA;  // 0.5 (s_i mu2_i + s_{i+1} mu2_{i+1}) per cell
  std::vector<double> cellL;  // node spacing per cell

  std::size_t nodes() const { return r.size(); }
  std::size_t cells() const { return cellA.size(); }
};

Disc build_disc(const HardyData& hd, int n, const QuadratureGrid& grid) {
  ensure(n >= 1, "dimension must be at least 1");
  ensure(grid.nodes.size() >= 3, "grid too small for quotient evaluation");
  RadialDomain dom;
  dom.n = n;
  dom.r_min = grid.nodes.front();
  dom.r_max = grid.nodes.back();
  dom.kind = DomainKind::annulus;

  const bool aligned = grid.nodes == hd.nodes;
  const std::vector<double> w = dx_weights(grid, dom);
  const double surf = sphere_factor(n);

  Disc d;
  d.p = hd.p;
  d.r = grid.nodes;
  const std::size_t m = d.r.size();
  d.bmass.resize(m);
  std::vector<double> smu2(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double m1 = aligned ? hd.mu1[i] : hd.mu1_at(d.r[i]);
    const double m2 = aligned ? hd.mu2_raw[i] : hd.mu2_raw_at(d.r[i]);
    ensure(std::isfinite(m1) && std::isfinite(m2),
           "measure data must be finite on the evaluation grid");
    d.bmass[i] = w[i] * m1;
    smu2[i] = surf * std::pow(d.r[i], n - 1.0) * m2;
  }
  d.cellA.resize(m - 1);
  d.cellL.resize(m - 1);
  for (std::size_t c = 0; c + 1 < m; ++c) {
    d.cellA[c] = 0.5 * (smu2[c] + smu2[c + 1]);
    d.cellL[c] = d.r[c + 1] - d.r[c];
  }
  return d;
}

double eval_num(const Disc& d, const std::vector<double>& x) {
  double num = 0.0;
  for (std::size_t c = 0; c < d.cells(); ++c) {
    const double q = (x[c + 1] - x[c]) / d.cellL[c];
    num += d.cellA[c] * d.cellL[c] * std::pow(std::abs(q), d.p);
  }
  return num;
}

double eval_den(const Disc& d, const std::vector<double>& x) {
  double den = 0.0;
  for (std::size_t i = 0; i < d.nodes(); ++i)
    den += d.bmass[i] * std::pow(std::abs(x[i]), d.p);
  return den;
}

// Quotient value; +infinity when the denominator is nonpositive (used to
// reject line-search trials without special-casing).
double eval_quotient(const Disc& d, const std::vector<double>& x) {
  const double den = eval_den(d, x);
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return eval_num(d, x) / den;
}

// Exact gradient of the discretized quotient (differentiate the
// discretization):  dR/dx_i = (dN/dx_i - R dD/dx_i) / D.
void eval_gradient(const Disc& d, const std::vector<double>& x, double R,
                   double den, std::vector<double>& g) {
  const std::size_t m = d.nodes();
  g.assign(m, 0.0);
  for (std::size_t c = 0; c < d.cells(); ++c) {
    const double q = (x[c + 1] - x[c]) / d.cellL[c];
    const double flux = d.p * d.cellA[c] * phi_p(q, d.p);
    g[c] -= flux;
    g[c + 1] += flux;
  }
  for (std::size_t i = 0; i < m; ++i) {
    g[i] -= R * d.p * d.bmass[i] * phi_p(x[i], d.p);
    g[i] /= den;
  }
}

// Tridiagonal SPD solve (Thomas algorithm) on indices [lo, hi].
void thomas_solve(std::vector<double>& diag, std::vector<double>& off,
                  std::vector<double>& rhs, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const double m = off[i - 1] / diag[i - 1];
    diag[i] -= m * off[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[hi] /= diag[hi];
  for (std::size_t i = hi; i > lo; --i)
    rhs[i - 1] = (rhs[i - 1] - off[i - 1] * rhs[i]) / diag[i - 1];
}

void validate_gradient(const Disc& d, std::vector<double>& x,
                       const std::vector<double>& g, std::size_t lo,
                       std::size_t hi, double tol) {
  double gmax = 0.0;
  std::size_t imax = lo;
  for (std::size_t i = lo; i <= hi; ++i)
    if (std::abs(g[i]) > gmax) { gmax = std::abs(g[i]); imax = i; }
  if (gmax == 0.0) return;

  // The component with the largest gradient plus two deterministic random
  // picks; picks adjacent to near-degenerate slopes are re-drawn because the
  // objective's curvature is unbounded there for p < 2.
  std::vector<std::size_t> idx{imax};
  double qmax = 0.0;
  for (std::size_t c = 0; c < d.cells(); ++c)
    qmax = std::max(qmax, std::abs((x[c + 1] - x[c]) / d.cellL[c]));
  std::mt19937_64 rng(20240818u);
  std::uniform_int_distribution<std::size_t> pick(lo, hi);
  for (int k = 0; k < 2; ++k) {
    std::size_t cand = imax;
    for (int attempt = 0; attempt < 20; ++attempt) {
      const std::size_t j = pick(rng);
      const double ql = j > 0 ? std::abs((x[j] - x[j - 1]) / d.cellL[j - 1]) : qmax;
      const double qr = j + 1 < d.nodes()
                            ? std::abs((x[j + 1] - x[j]) / d.cellL[j])
                            : qmax;
      if (std::min(ql, qr) > 1e-2 * qmax) { cand = j; break; }
    }
    idx.push_back(cand);
  }

  const double R0 = eval_quotient(d, x);
  double xmax = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) xmax = std::max(xmax, std::abs(x[i]));
  for (std::size_t i : idx) {
    // Step scaled to the iterate's coordinate range: large enough to rise
    // above evaluation rounding, small enough to stay in the linear regime
    // even when the measures span many orders of magnitude.  The truncation/
    // rounding balance point is not known a priori, so a failing comparison
    // is retried at a smaller and a larger step; an implementation bug shows
    // an O(1) mismatch at every step size.
    const double keep = x[i];
    double best_rel = std::numeric_limits<double>::infinity();
    double best_fd = 0.0;
    bool measurable = false;
    for (double hf : {1e-7, 1.25e-8, 8e-7}) {
      const double h = hf * (std::abs(keep) + xmax);
      x[i] = keep + h;
      const double rp = eval_quotient(d, x);
      x[i] = keep - h;
      const double rm = eval_quotient(d, x);
      x[i] = keep;
      const double fd = (rp - rm) / (2.0 * h);
      const double denom = std::max(std::abs(g[i]), std::abs(fd));
      if (denom < 1e-7 * gmax) continue;  // numerically invisible component
      if (denom < 1e-10 * std::max(1.0, std::abs(R0))) continue;  // noise floor
      measurable = true;
      const double rel = std::abs(fd - g[i]) / denom;
      if (rel < best_rel) { best_rel = rel; best_fd = fd; }
      if (best_rel < tol) break;
    }
    if (measurable && !(best_rel < tol)) {
      std::ostringstream os;
      os << "discrete gradient self-test failed at node " << i << ": analytic "
         << g[i] << ", finite-difference " << best_fd << ", relative error "
         << best_rel;
      throw std::runtime_error(os.str());
    }
  }
}

std::vector<double> initial_vector(const Disc& d, const MinimizerOptions& opts,
                                   std::size_t lo, std::size_t hi) {
  const std::size_t m = d.nodes();
  std::vector<double> x(m, 0.0);
  switch (opts.init) {
    case InitKind::talenti_like: {
      const double pp = d.p / (d.p - 1.0);
      const double span = static_cast<double>(m - 1);
      for (std::size_t i = lo; i <= hi; ++i) {
        double v = 1.0 / (1.0 + std::pow(d.r[i], pp));
        const double out_ramp =
            std::min(1.0, static_cast<double>(m - 1 - i) / (0.1 * span));
        v *= out_ramp;
        if (opts.boundary == BoundaryCondition::dirichlet_both) {
          const double in_ramp =
              std::min(1.0, static_cast<double>(i) / (0.1 * span));
          v *= in_ramp;
        }
        x[i] = v;
      }
      break;
    }
    case InitKind::tent: {
      const double peak = 0.5 * static_cast<double>(lo + hi);
      for (std::size_t i = lo; i <= hi; ++i) {
        const double left =
            (static_cast<double>(i) - (static_cast<double>(lo) - 1.0)) /
            (peak - (static_cast<double>(lo) - 1.0));
        const double right =
            ((static_cast<double>(hi) + 1.0) - static_cast<double>(i)) /
            ((static_cast<double>(hi) + 1.0) - peak);
        x[i] = std::min(left, right);
      }
      break;
    }
    case InitKind::supplied: {
      const RadialProfile xr = resample_profile(*opts.supplied_init, d.r);
      x = xr.values;
      for (std::size_t i = 0; i < lo; ++i) x[i] = 0.0;
      for (std::size_t i = hi + 1; i < m; ++i) x[i] = 0.0;
      break;
    }
  }
  return x;
}

RadialProfile profile_from_vector(const Disc& d, const std::vector<double>& x) {
  RadialProfile out;
  out.grid = d.r;
  out.values = x;
  const std::size_t m = d.nodes();
  out.derivative_values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 < m ? i + 1 : i;
    out.derivative_values[i] = (x[b] - x[a]) / (d.r[b] - d.r[a]);
  }
  out.extrapolation = RadialProfile::Extrapolation::clamp;
  return out;
}

}  // namespace

double rayleigh_quotient(const HardyData& hd, const RadialProfile& xi, int n,
                         const QuadratureGrid& grid) {
  const Disc d = build_disc(hd, n, grid);
  const RadialProfile xr = resample_profile(xi, grid.nodes);
  const double den = eval_den(d, xr.values);
  ensure(den > 0.0, "test function orthogonal to mu1");
  const double num = eval_num(d, xr.values);
  ensure(std::isfinite(num) && std::isfinite(den),
         "quotient is not finite on this grid");
  return num / den;
}

MinimizeResult minimize_rayleigh(const HardyData& hd, double p, int n,
                                 const QuadratureGrid& grid,
                                 const MinimizerOptions& opts) {
  opts.validate();
  ensure(p > 1.0 && std::isfinite(p), "exponent p must exceed 1");
  ensure(hd.p == p, "exponent p disagrees with the measure data");
  const Disc d = build_disc(hd, n, grid);

  double mu1_scale = 0.0;
  for (double b : d.bmass) mu1_scale = std::max(mu1_scale, std::abs(b));
  ensure(mu1_scale > 0.0, "mu1 must not be identically zero");

  const std::size_t m = d.nodes();
  const std::size_t lo = opts.boundary == BoundaryCondition::dirichlet_both ? 1 : 0;
  const std::size_t hi = m - 2;  // the outer end is always pinned
  ensure(hi > lo, "grid too small for the requested boundary conditions");

  std::vector<double> x = initial_vector(d, opts, lo, hi);

  const double den0 = eval_den(d, x);
  ensure(den0 > 0.0,
         "initial profile orthogonal to mu1; choose another initialization");
  const double scale = std::pow(den0, -1.0 / p);
  for (double& v : x) v *= scale;

  double den = eval_den(d, x);
  double R = eval_num(d, x) / den;
  if (!std::isfinite(R))
    throw std::runtime_error("quotient became non-finite at iteration 0");

  std::vector<double> g;
  eval_gradient(d, x, R, den, g);
  validate_gradient(d, x, g, lo, hi, opts.grad_check_tol);

  MinimizeResult out;
  out.trace.push_back(R);

  std::vector<double> diag(m), off(m), rhs(m), xt(m);
  int calm = 0;
  for (int iter = 1; iter <= opts.max_iterations; ++iter) {
    double gmax = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) gmax = std::max(gmax, std::abs(g[i]));
    if (gmax == 0.0) break;

    // Preconditioner: tridiagonal linearization of the numerator's stiffness
    // at the current slopes plus a small mass shift, kept SPD by flooring
    // degenerate slopes.
    double qmax = 0.0;
    for (std::size_t c = 0; c < d.cells(); ++c)
      qmax = std::max(qmax, std::abs((x[c + 1] - x[c]) / d.cellL[c]));
    const double qfloor = qmax > 0.0 ? 1e-8 * qmax : 1.0;
    const double shift_unit = 1e-2 * std::abs(R) + 1e-12;
    std::fill(diag.begin(), diag.end(), 0.0);
    std::fill(off.begin(), off.end(), 0.0);
    // p (p-1) A |q|^{p-2} / L is the exact cell Hessian of the numerator; for
    // p = 2 the resulting step x - M^{-1} g is one inverse-power iteration,
    // which annihilates high-frequency modes instead of merely damping them.
    for (std::size_t c = 0; c < d.cells(); ++c) {
      const double q = std::max(std::abs((x[c + 1] - x[c]) / d.cellL[c]), qfloor);
      // No absolute stiffness floor here: cell magnitudes legitimately span
      // many orders (k ~ r^{n-1}/dr on log grids), and any floor keyed to a
      // global scale over-stiffens the small-radius cells, which stalls the
      // iteration. Dead cells (A = 0) are kept solvable by the mass shift on
      // the diagonal below.
      const double k =
          p * (p - 1.0) * d.cellA[c] * std::pow(q, p - 2.0) / d.cellL[c];
      diag[c] += k;
      diag[c + 1] += k;
      off[c] = -k;
    }
    // Levenberg-style damping proportional to the LOCAL mass keeps the solve
    // SPD without distorting the step scale (a global floor would swamp the
    // small-radius rows on wide log grids). Fully dead rows (no adjacent
    // stiffness, no mass) get an isolated epsilon diagonal so the elimination
    // never divides by zero; their right-hand side is identically zero.
    for (std::size_t i = 0; i < m; ++i)
      diag[i] += shift_unit * std::abs(d.bmass[i]) + 1e-300;
    for (std::size_t i = lo; i <= hi; ++i) rhs[i] = g[i];
    thomas_solve(diag, off, rhs, lo, hi);

    double slope = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) slope += g[i] * rhs[i];
    if (!(slope > 0.0)) break;  // numerically stationary

    double alpha = opts.initial_step;
    bool accepted = false;
    double R_new = R;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      xt = x;
      for (std::size_t i = lo; i <= hi; ++i) xt[i] -= alpha * rhs[i];
      const double dent = eval_den(d, xt);
      if (dent > 0.0) {
        const double Rt = eval_num(d, xt) / dent;
        if (std::isfinite(Rt) && Rt <= R - opts.armijo_c1 * alpha * slope) {
          accepted = true;
          R_new = Rt;
          den = dent;
          break;
        }
      }
      alpha *= opts.backtrack_shrink;
    }
    if (!accepted) break;  // line search exhausted: stationary at resolution

    x.swap(xt);
    // Renormalize for conditioning; the quotient is 0-homogeneous so the
    // recorded value is unchanged (guarded against last-ulp wiggle).
    const double rescale = std::pow(den, -1.0 / p);
    for (double& v : x) v *= rescale;
    den = eval_den(d, x);
    R = R_new;
    out.trace.push_back(std::min(R_new, out.trace.back()));

    const double prev = out.trace[out.trace.size() - 2];
    const double drop = (prev - out.trace.back()) / std::max(out.trace.back(), 1e-300);
    calm = drop < opts.convergence_tol ? calm + 1 : 0;
    if (calm >= opts.patience) break;

    eval_gradient(d, x, R, den, g);
  }

  out.value = out.trace.back();
  out.minimizer = profile_from_vector(d, x);
  return out;
}

ProbeResult sharpness_probe(const HardyData& hd,
                            const std::function<RadialProfile(double)>& family,
                            const std::vector<double>& param_grid, int n,
                            const QuadratureGrid& grid) {
  ensure(static_cast<bool>(family), "probe family must be callable");
  ensure(!param_grid.empty(), "probe parameter grid must not be empty");
  ProbeResult out;
  out.best_quotient = std::numeric_limits<double>::infinity();
  for (double s : param_grid) {
    const RadialProfile xi = family(s);
    const double q = rayleigh_quotient(hd, xi, n, grid);
    out.params.push_back(s);
    out.quotients.push_back(q);
    if (q < out.best_quotient) {
      out.best_quotient = q;
      out.best_param = s;
    }
  }
  return out;
}

RadialProfile probe_trial_profile(const std::vector<double>& nodes, double p,
                                  double s, double cut_start, double cut_end) {
  ensure(p > 1.0, "exponent p must exceed 1");
  ensure(s > 0.0, "decay parameter s must be positive");
  ensure(!nodes.empty(), "empty node list");
  ensure(cut_start > nodes.front() && cut_start < cut_end,
         "cutoff window must sit inside the grid and be ordered");
  const double r0 = nodes.front();
  const double lo1 = r0 > 0.0 ? 0.25 * r0 : 1e-6 * cut_start;
  const double lo2 = 2.0 * lo1;
  ensure(lo2 < cut_start, "cutoff window overlaps the inner plateau ramp");
  const RadialProfile cut = plateau_cutoff(nodes, lo1, lo2, cut_start, cut_end);
  const double pp = p / (p - 1.0);
  auto base = [pp, s](double r) { return std::pow(1.0 + std::pow(r, pp), -s); };
  auto dbase = [pp, s](double r) {
    if (r <= 0.0) return 0.0;
    return -s * pp * std::pow(r, pp - 1.0) *
           std::pow(1.0 + std::pow(r, pp), -s - 1.0);
  };
  auto cf = cut.f;
  auto cdf = cut.df;
  return sample_on_grid(
      nodes, [=](double r) { return base(r) * cf(r); },
      [=](double r) { return dbase(r) * cf(r) + base(r) * cdf(r); });
}

}  // namespace radineq
