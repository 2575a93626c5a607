#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radineq/calculus.hpp"
#include "radineq/grid.hpp"

using namespace radineq;

namespace {

RadialDomain ball3(double r_max = 1.0) {
  RadialDomain d;
  d.n = 3;
  d.r_min = 1e-8;
  d.r_max = r_max;
  d.kind = DomainKind::ball;
  return d;
}

}  // namespace

TEST_CASE("ball volume and moment integrals") {
  RadialDomain d = ball3();
  QuadratureGrid g = make_log_grid(d.r_min, d.r_max, 2001);

  double vol = integrate_radial([](double) { return 1.0; }, g, d);
  CHECK(vol == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-7));

  double mom = integrate_radial([](double r) { return 1.0 / r; }, g, d);
  CHECK(mom == doctest::Approx(2.0 * M_PI).epsilon(1e-7));
}

TEST_CASE("half-Gaussian on a 1-d interval") {
  RadialDomain d;
  d.n = 1;
  d.r_min = 0.0;
  d.r_max = 8.0;
  d.kind = DomainKind::interval_1d;
  QuadratureGrid g = make_uniform_grid(0.0, 8.0, 8001);
  double v = integrate_radial([](double r) { return std::exp(-r * r); }, g, d);
  CHECK(std::abs(v - std::sqrt(M_PI) / 2.0) < 1e-11);
}

TEST_CASE("quadrature error falls at the declared order under halving") {
  RadialDomain d = ball3();
  auto err = [&](int m) {
    QuadratureGrid g = make_log_grid(d.r_min, d.r_max, m);
    double v = integrate_radial([](double r) { return 1.0 / r; }, g, d);
    return std::abs(v - 2.0 * M_PI);
  };
  double e1 = err(501), e2 = err(1001);
  CHECK(e2 * 8.0 < e1);  // Simpson is 4th order; allow slack

  RadialDomain i1;
  i1.n = 1;
  i1.r_min = 0.0;
  i1.r_max = 8.0;
  i1.kind = DomainKind::interval_1d;
  auto err_u = [&](int m) {
    QuadratureGrid g = make_uniform_grid(0.0, 8.0, m);
    double v = integrate_radial([](double r) { return std::exp(-r * r); }, g, i1);
    return std::abs(v - std::sqrt(M_PI) / 2.0);
  };
  // coarse enough that truncation still dominates roundoff
  double u1 = err_u(25), u2 = err_u(51);
  CHECK(u2 * 8.0 < u1);
  CHECK(err_u(201) < 1e-12);
}

TEST_CASE("integrating 1 reproduces ball volume within declared tolerance") {
  for (int n : {1, 2, 3, 5}) {
    RadialDomain d;
    d.n = n;
    d.r_min = 1e-8;
    d.r_max = 1.0;
    d.kind = DomainKind::ball;
    QuadratureGrid g = make_log_grid(d.r_min, d.r_max, 4001);
    double vol = integrate_radial([](double) { return 1.0; }, g, d);
    double exact = std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    CHECK(std::abs(vol - exact) / exact < g.declared_rel_tol);
  }
}

TEST_CASE("hybrid grid integrates across the split") {
  RadialDomain d = ball3(10.0);
  QuadratureGrid g = make_hybrid_grid(1e-8, 0.5, 10.0, 4001);
  g.validate();
  double vol = integrate_radial([](double) { return 1.0; }, g, d);
  CHECK(vol == doctest::Approx(4.0 * M_PI / 3.0 * 1000.0).epsilon(1e-7));
}

TEST_CASE("non-finite integrand is reported with the offending radius") {
  RadialDomain d = ball3();
  QuadratureGrid g = make_log_grid(1e-3, 1.0, 101);
  CHECK_THROWS_WITH_AS(
      integrate_radial([](double r) { return 1.0 / (r - r); }, g, d),
      doctest::Contains("not finite"), std::invalid_argument);
}

TEST_CASE("radial derivative: polynomial, closed form, constant") {
  QuadratureGrid g = make_log_grid(1e-3, 10.0, 501);

  RadialProfile sq;
  sq.grid = g.nodes;
  for (double r : g.nodes) sq.values.push_back(r * r);
  RadialProfile dsq = radial_derivative(sq);
  for (std::size_t i = 0; i < g.nodes.size(); i += 50)
    CHECK(dsq.values[i] == doctest::Approx(2.0 * g.nodes[i]).epsilon(1e-10));

  // Closed form is used when present.
  RadialProfile t = sample_on_grid(
      g.nodes, [](double r) { return std::pow(1.0 + r * r, -0.5); },
      [](double r) { return -r * std::pow(1.0 + r * r, -1.5); });
  RadialProfile dt = radial_derivative(t);
  for (std::size_t i = 0; i < g.nodes.size(); i += 50) {
    double r = g.nodes[i];
    CHECK(dt.values[i] == doctest::Approx(-r * std::pow(1.0 + r * r, -1.5)));
  }

  RadialProfile c5;
  c5.grid = g.nodes;
  c5.values.assign(g.nodes.size(), 5.0);
  RadialProfile dc = radial_derivative(c5);
  // pure roundoff: ~eps * 5 / min cell width on the log grid
  for (double v : dc.values) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("p-laplacian closed forms") {
  QuadratureGrid g = make_log_grid(1e-6, 1e3, 8001);
  WeightFunction one = WeightFunction::constant_w(1.0);

  SUBCASE("laplacian of r^2 in R^3 is 6") {
    RadialProfile sq = sample_on_grid(
        g.nodes, [](double r) { return r * r; }, [](double r) { return 2.0 * r; });
    RadialProfile L = p_laplace_radial(sq, one, 2.0, 3, g.grading);
    for (std::size_t i = 0; i < L.values.size(); i += 500)
      CHECK(L.values[i] == doctest::Approx(-6.0).epsilon(1e-5));
  }

  SUBCASE("constant profile has zero field") {
    RadialProfile c = sample_on_grid(
        g.nodes, [](double) { return 5.0; }, [](double) { return 0.0; });
    RadialProfile L = p_laplace_radial(c, one, 3.0, 3, g.grading);
    for (double v : L.values) CHECK(v == 0.0);
  }

  SUBCASE("decaying profile reproduces its closed-form field") {
    // u = (1+r^2)^{-1/2} in R^3:  -Laplace(u) = 3 (1+r^2)^{-5/2}.
    RadialProfile u = sample_on_grid(
        g.nodes, [](double r) { return std::pow(1.0 + r * r, -0.5); },
        [](double r) { return -r * std::pow(1.0 + r * r, -1.5); });
    RadialProfile L = p_laplace_radial(u, one, 2.0, 3, g.grading);
    double worst = 0.0;
    for (std::size_t i = 0; i < L.grid.size(); ++i) {
      double r = L.grid[i];
      double exact = 3.0 * std::pow(1.0 + r * r, -2.5);
      worst = std::max(worst, std::abs(L.values[i] - exact) / exact);
    }
    CHECK(worst < 3e-6);
  }
}

TEST_CASE("degenerate flux convention: zero slope contributes zero flux") {
  CHECK(odd_power(0.0, 1.5) == 0.0);
  CHECK(odd_power(2.0, 3.0) == doctest::Approx(4.0));
  CHECK(odd_power(-2.0, 3.0) == doctest::Approx(-4.0));
}

TEST_CASE("discrete integration by parts bridges strong and weak form") {
  // Smooth compactly supported polynomial bumps on (1, 4).
  auto bump = [](double a, double b) {
    auto f = [a, b](double r) {
      if (r <= a || r >= b) return 0.0;
      double s = (r - a) * (b - r);
      return s * s;
    };
    auto df = [a, b](double r) {
      if (r <= a || r >= b) return 0.0;
      double s = (r - a) * (b - r);
      return 2.0 * s * (a + b - 2.0 * r);
    };
    return std::pair{f, df};
  };
  auto [wf, wdf] = bump(1.0, 4.0);
  auto [pf, pdf] = bump(1.2, 3.8);

  RadialDomain d;
  d.n = 3;
  d.r_min = 0.5;
  d.r_max = 5.0;
  d.kind = DomainKind::annulus;
  WeightFunction a = WeightFunction::power_w(1.0);

  auto gap = [&](int m, double p) {
    QuadratureGrid g = make_log_grid(d.r_min, d.r_max, m);
    RadialProfile w = sample_on_grid(g.nodes, wf, wdf);
    RadialProfile L = p_laplace_radial(w, a, p, d.n, g.grading);
    std::vector<double> W = dx_weights(g, d);
    double strong = 0.0;
    for (std::size_t i = 1; i + 1 < g.nodes.size(); ++i)
      strong += W[i] * L.values[i - 1] * pf(g.nodes[i]);
    double weak = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      double r = g.nodes[i];
      weak += W[i] * a.eval(r) * odd_power(wdf(r), p) * pdf(r);
    }
    return std::abs(strong - weak) / std::abs(weak);
  };

  for (double p : {2.0, 3.0}) {
    // coarse-to-fine: the mismatch shrinks and is small in absolute terms
    double g0 = gap(501, p), g2 = gap(2001, p);
    CHECK(g0 < 5e-4);
    CHECK(g2 < g0);
    CHECK(g2 < 2e-5);
  }
}
