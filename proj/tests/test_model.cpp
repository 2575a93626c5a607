#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "radineq/grid.hpp"
#include "radineq/model.hpp"

using namespace radineq;

TEST_CASE("decaying profile: explicit scale constants") {
  // (3,2,0,3): base ((3-0)/3) * ((3-2)/(2-1))^1 = 1 -> c = 1.
  CHECK(talenti_scale_constant(3, 2.0, 0.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  // (4,2,0,8): base (4/8) * 2 = 1 -> c = 1.
  CHECK(talenti_scale_constant(4, 2.0, 0.0, 8.0) == doctest::Approx(1.0).epsilon(1e-15));
  // (4,3,0,gamma): base (4/gamma) * (1/2)^2 = 1/gamma; p*_0 = 12 -> c = gamma^{-1/9}.
  for (double gamma : {0.5, 1.0, 2.0, 7.0})
    CHECK(talenti_scale_constant(4, 3.0, 0.0, gamma) ==
          doctest::Approx(std::pow(gamma, -1.0 / 9.0)).epsilon(1e-14));
  // (3,2,1,2): base (2/2) * 1 = 1 -> c = 1, profile (1+r)^{-1}.
  CHECK(talenti_scale_constant(3, 2.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("decaying profile: values, positivity, monotonicity, bound") {
  QuadratureGrid g = make_log_grid(1e-6, 1e3, 801);
  RadialProfile u = make_talenti_profile(3, 2.0, 0.0, 3.0, g.nodes);

  CHECK(u.value_at(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < u.size(); i += 80) {
    double r = u.grid[i];
    CHECK(u.values[i] == doctest::Approx(std::pow(1.0 + r * r, -0.5)).epsilon(1e-14));
  }
  double c = talenti_scale_constant(3, 2.0, 0.0, 3.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(u.values[i] > 0.0);
    CHECK(u.values[i] <= c);
    if (i > 0) CHECK(u.values[i] < u.values[i - 1]);
  }

  RadialProfile u48 = make_talenti_profile(4, 2.0, 0.0, 8.0, g.nodes);
  for (std::size_t i = 0; i < u48.size(); i += 80) {
    double r = u48.grid[i];
    CHECK(u48.values[i] == doctest::Approx(1.0 / (1.0 + r * r)).epsilon(1e-14));
  }
}

TEST_CASE("decaying profile: parameter gates") {
  std::vector<double> grid = {0.5, 1.0, 2.0};
  CHECK_THROWS_AS(make_talenti_profile(3, 2.0, 2.5, 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(make_talenti_profile(3, 3.5, 0.0, 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(make_talenti_profile(3, 2.0, 0.0, -1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(make_talenti_profile(3, 2.0, 0.0, 0.0, grid), std::invalid_argument);
}

TEST_CASE("interpolating weight pair: values and gates") {
  auto [v1, v2] = make_hp_weights(3, 2.0, 2.0, 1.0);
  CHECK(v1.eval(0.0) == doctest::Approx(1.0));
  CHECK(v2.eval(0.0) == doctest::Approx(1.0));
  CHECK(v1.eval(2.0) == doctest::Approx(5.0).epsilon(1e-14));         // (1+4)^1
  CHECK(v2.eval(2.0) == doctest::Approx(25.0).epsilon(1e-14));        // (1+4)^2
  auto [w1, w2] = make_hp_weights(3, 2.0, 2.0, 0.5);
  CHECK(w1.eval(0.0) == doctest::Approx(1.0));
  CHECK(w1.eval(1.0) == doctest::Approx(1.5).epsilon(1e-14));         // (1+0.5)*(1+1)^0

  // r_param bound for (3,2,2): 1 - 2/3 + 4/3 = 5/3.
  CHECK_THROWS_WITH_AS(make_hp_weights(3, 2.0, 2.0, 2.0),
                       doctest::Contains("1.6666"), std::invalid_argument);
  CHECK_THROWS_AS(make_hp_weights(3, 2.0, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("explicit constants of the weighted Hardy family") {
  HpConstant a = hp_constant(3, 2.0, 2.0, 1.0);
  CHECK(a.value == doctest::Approx(6.0).epsilon(1e-15));
  // gamma = 2 is outside both established regimes for r_param = 1
  // (needs gamma > 2.5 or gamma = 2.5): not claimed optimal.
  CHECK(a.optimal == OptimalityFlag::unknown);

  HpConstant b = hp_constant(3, 2.0, 5.0, 1.0);
  CHECK(b.value == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(b.optimal == OptimalityFlag::optimal);

  HpConstant c = hp_constant(3, 2.0, 2.0, 0.5);
  CHECK(c.value == doctest::Approx(10.5).epsilon(1e-15));
  CHECK(c.optimal == OptimalityFlag::optimal);  // 2 > 3*0.5 + 1 - 1.5 = 1

  HpConstant d = hp_constant(3, 2.0, 2.5, 1.0);  // boundary case gamma = 1 + n(1-1/p)
  CHECK(d.optimal == OptimalityFlag::optimal);
}

TEST_CASE("closed form at r_param = 1 agrees exactly on a parameter grid") {
  for (int n : {3, 5, 8})
    for (double p : {1.5, 2.0, 3.0})
      for (double gamma : {1.5, 2.5, 5.0}) {
        HpConstant h = hp_constant(n, p, gamma, 1.0);
        CHECK(h.value == hp_constant_r1(n, p, gamma));  // bitwise
      }
}

TEST_CASE("cutoff-energy constant and measure constant") {
  CHECK(caccioppoli_constant(2.0, 1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(caccioppoli_constant(2.0, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(caccioppoli_constant(3.0, 1.0, 0.0) == doctest::Approx(4.0 / 27.0).epsilon(1e-15));
  CHECK_THROWS_WITH_AS(caccioppoli_constant(2.0, 1.0, 1.0),
                       doctest::Contains("sigma < C"), std::invalid_argument);

  CHECK(hardy_mu2_constant(2.0, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(hardy_mu2_constant(2.0, 1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(hardy_mu2_constant(3.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(hardy_mu2_constant(2.0, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("identity: cutoff constant times p^p equals measure constant") {
  std::mt19937_64 rng(20240817ULL);
  std::uniform_real_distribution<double> pd(1.1, 5.0), Cd(0.1, 4.0), frac(0.0, 0.95);
  for (int k = 0; k < 1000; ++k) {
    double p = pd(rng), C = Cd(rng), sigma = C - (C + 1.0) * (1.0 - frac(rng));
    if (!(sigma < C)) continue;
    double lhs = caccioppoli_constant(p, C, sigma) * std::pow(p, p);
    double rhs = hardy_mu2_constant(p, C, sigma);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * rhs);
  }
}

TEST_CASE("critical exponent arithmetic") {
  CHECK(p_star_beta(3, 2.0, 0.0) == doctest::Approx(6.0));      // pn/(n-p)
  CHECK(p_star_beta(4, 3.0, 0.0) == doctest::Approx(12.0));
  CHECK(p_star_beta(3, 2.0, 1.0) == doctest::Approx(4.0));
  double prev = p_star_beta(5, 2.0, -1.0);
  for (double beta : {-0.5, 0.0, 0.5, 1.0, 1.5}) {
    double cur = p_star_beta(5, 2.0, beta);
    CHECK(cur < prev);  // decreasing in beta
    prev = cur;
  }
}
