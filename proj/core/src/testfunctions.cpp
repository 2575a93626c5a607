#include "radineq/testfunctions.hpp"

#include <algorithm>
#include <cmath>

namespace radineq {

namespace {

// Mollifier in the unit coordinate: m(x) = exp(1 - 1/(1-x^2)) on (-1, 1),
// peak 1 at x = 0, identically 0 outside.
double moll(double x) {
  double d = 1.0 - x * x;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

double moll_dx(double x) {
  double d = 1.0 - x * x;
  if (d <= 0.0) return 0.0;
  return moll(x) * (-2.0 * x / (d * d));
}

// C-infinity step: 0 at x<=0, 1 at x>=1.
double estep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double b = std::exp(-1.0 / x), c = std::exp(-1.0 / (1.0 - x));
  return b / (b + c);
}

double estep_dx(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double b = std::exp(-1.0 / x), c = std::exp(-1.0 / (1.0 - x));
  double d = b + c;
  double omx = 1.0 - x;
  return b * c * (1.0 / (x * x) + 1.0 / (omx * omx)) / (d * d);
}

}  // namespace

RadialProfile tent(const std::vector<double>& nodes, double lo, double peak, double hi) {
  ensure(lo < peak && peak < hi, "tent: requires lo < peak < hi");
  auto f = [lo, peak, hi](double r) {
    if (r <= lo || r >= hi) return 0.0;
    return r < peak ? (r - lo) / (peak - lo) : (hi - r) / (hi - peak);
  };
  auto df = [lo, peak, hi](double r) {
    if (r <= lo || r >= hi) return 0.0;
    return r < peak ? 1.0 / (peak - lo) : -1.0 / (hi - peak);
  };
  return sample_on_grid(nodes, f, df);
}

RadialProfile smooth_bump(const std::vector<double>& nodes, double lo, double hi) {
  ensure(lo < hi, "smooth_bump: requires lo < hi");
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  auto f = [mid, half](double r) { return moll((r - mid) / half); };
  auto df = [mid, half](double r) { return moll_dx((r - mid) / half) / half; };
  return sample_on_grid(nodes, f, df);
}

RadialProfile log_bump(const std::vector<double>& nodes, double lo, double hi) {
  ensure(0.0 < lo && lo < hi, "log_bump: requires 0 < lo < hi");
  double mid = 0.5 * (std::log(lo) + std::log(hi));
  double half = 0.5 * (std::log(hi) - std::log(lo));
  auto f = [mid, half](double r) { return moll((std::log(r) - mid) / half); };
  auto df = [mid, half](double r) {
    const double num = moll_dx((std::log(r) - mid) / half);
    return num == 0.0 ? 0.0 : num / (half * r);  // avoid 0/0 at r = 0
  };
  return sample_on_grid(nodes, f, df);
}

RadialProfile plateau_cutoff(const std::vector<double>& nodes, double lo1, double lo2, double hi1,
                             double hi2) {
  ensure(0.0 < lo1 && lo1 < lo2 && lo2 <= hi1 && hi1 < hi2,
         "plateau_cutoff: requires 0 < lo1 < lo2 <= hi1 < hi2");
  double a1 = std::log(lo1), a2 = std::log(lo2), b1 = std::log(hi1), b2 = std::log(hi2);
  auto f = [a1, a2, b1, b2](double r) {
    double s = std::log(r);
    return estep((s - a1) / (a2 - a1)) * estep((b2 - s) / (b2 - b1));
  };
  auto df = [a1, a2, b1, b2](double r) {
    double s = std::log(r);
    double up = estep((s - a1) / (a2 - a1));
    double dn = estep((b2 - s) / (b2 - b1));
    double dup = estep_dx((s - a1) / (a2 - a1)) / (a2 - a1);
    double ddn = -estep_dx((b2 - s) / (b2 - b1)) / (b2 - b1);
    const double num = dup * dn + up * ddn;
    return num == 0.0 ? 0.0 : num / r;  // avoid 0/0 at r = 0
  };
  return sample_on_grid(nodes, f, df);
}

RadialProfile random_knot_tent(const std::vector<double>& nodes, double lo, double hi,
                               std::size_t knots, std::mt19937_64& rng) {
  ensure(0.0 < lo && lo < hi, "random_knot_tent: requires 0 < lo < hi");
  ensure(knots >= 1, "random_knot_tent: needs at least one interior knot");

  // Knot radii are drawn log-uniformly so multi-decade supports are covered.
  std::uniform_real_distribution<double> su(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> hu(0.1, 1.0);
  std::vector<double> xs{lo}, ys{0.0};
  std::vector<double> inner(knots);
  for (std::size_t k = 0; k < knots; ++k) inner[k] = std::exp(su(rng));
  std::sort(inner.begin(), inner.end());
  for (double x : inner) {
    xs.push_back(x);
    ys.push_back(hu(rng));
  }
  xs.push_back(hi);
  ys.push_back(0.0);

  auto f = [xs, ys](double r) {
    if (r <= xs.front() || r >= xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), r);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    double t = (r - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
  };
  auto df = [xs, ys](double r) {
    if (r <= xs.front() || r >= xs.back()) return 0.0;
    auto it = std::upper_bound(xs.begin(), xs.end(), r);
    std::size_t j = static_cast<std::size_t>(it - xs.begin());
    return (ys[j] - ys[j - 1]) / (xs[j] - xs[j - 1]);
  };
  return sample_on_grid(nodes, f, df);
}

RadialProfile pth_power(const RadialProfile& xi, double p) {
  ensure(p > 1.0, "pth_power: requires p > 1");
  RadialProfile out;
  out.grid = xi.grid;
  out.extrapolation = xi.extrapolation;
  out.values.resize(xi.grid.size());
  if (xi.f) {
    auto f = xi.f;
    out.f = [f, p](double r) { return std::pow(f(r), p); };
  }
  if (xi.f && xi.df) {
    auto f = xi.f;
    auto df = xi.df;
    out.df = [f, df, p](double r) {
      double v = f(r);
      return v == 0.0 ? 0.0 : p * std::pow(v, p - 1.0) * df(r);
    };
  }
  for (std::size_t i = 0; i < xi.grid.size(); ++i)
    out.values[i] = std::pow(xi.values[i], p);
  if (out.df) {
    out.derivative_values.resize(xi.grid.size());
    for (std::size_t i = 0; i < xi.grid.size(); ++i)
      out.derivative_values[i] = out.df(out.grid[i]);
  } else if (xi.has_derivative_samples()) {
    out.derivative_values.resize(xi.grid.size());
    for (std::size_t i = 0; i < xi.grid.size(); ++i) {
      double v = xi.values[i];
      out.derivative_values[i] =
          v == 0.0 ? 0.0 : p * std::pow(v, p - 1.0) * xi.derivative_values[i];
    }
  }
  return out;
}

}  // namespace radineq
