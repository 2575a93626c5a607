#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "radineq/compat.hpp"

using namespace radineq;

namespace {

RadialDomain ball3(double r_min = 1e-6, double r_max = 1.0) {
  RadialDomain d;
  d.n = 3;
  d.r_min = r_min;
  d.r_max = r_max;
  d.kind = DomainKind::ball;
  return d;
}

std::vector<double> log_samples(double lo, double hi, std::size_t m) {
  return make_log_grid(lo, hi, m).nodes;
}

}  // namespace

TEST_CASE("local integrability of the dual weight: exact power rule") {
  RadialDomain d = ball3();
  QuadratureGrid g = make_log_grid(d.r_min, d.r_max, 1001);

  SUBCASE("unit weight always passes") {
    for (double p : {1.5, 2.0, 3.0}) {
      BpReport rep = check_bp_weight(WeightFunction::constant_w(1.0), p, d, g);
      CHECK(rep.holds);
      CHECK(rep.used_analytic_power_rule);
    }
  }

  SUBCASE("r^2 with p=2 in dimension 3 passes") {
    BpReport rep = check_bp_weight(WeightFunction::power_w(2.0), 2.0, d, g);
    CHECK(rep.holds);
    CHECK(rep.integral_samples.size() == 9);
    for (double v : rep.integral_samples) CHECK(std::isfinite(v));
  }

  SUBCASE("exponent rule matches alpha/(p-1) < n for every power weight") {
    for (double alpha : {-4.0, -1.0, 0.0, 0.5, 2.0, 2.999, 3.0, 5.0}) {
      for (double p : {1.5, 2.0, 3.0}) {
        BpReport rep = check_bp_weight(WeightFunction::power_w(alpha), p, d, g);
        CHECK(rep.holds == (alpha / (p - 1.0) < 3.0));
      }
    }
  }

  SUBCASE("strong power weights are harmless away from the origin") {
    RadialDomain ann = ball3(0.5, 2.0);
    ann.kind = DomainKind::annulus;
    BpReport rep = check_bp_weight(WeightFunction::power_w(50.0), 2.0, ann,
                                   make_log_grid(0.5, 2.0, 501));
    CHECK(rep.holds);
  }
}

TEST_CASE("local integrability: essentially-degenerate weight fails") {
  WeightFunction a =
      WeightFunction::custom_w([](double r) { return std::exp(-1.0 / r); }, "exp(-1/r)");

  SUBCASE("deep truncation overflows the dual weight") {
    RadialDomain d = ball3();
    BpReport rep = check_bp_weight(a, 2.0, d, make_log_grid(d.r_min, d.r_max, 1001));
    CHECK_FALSE(rep.holds);
    CHECK_FALSE(rep.used_analytic_power_rule);
  }

  SUBCASE("shallow truncation drifts under refinement") {
    RadialDomain d = ball3(5e-3, 1.0);
    BpReport rep = check_bp_weight(a, 2.0, d, make_log_grid(d.r_min, d.r_max, 1001));
    CHECK_FALSE(rep.holds);
  }

  SUBCASE("a smooth strictly positive custom weight passes the generic path") {
    WeightFunction s =
        WeightFunction::custom_w([](double r) { return 2.0 + std::sin(r); }, "2+sin");
    RadialDomain d = ball3();
    BpReport rep = check_bp_weight(s, 2.0, d, make_log_grid(d.r_min, d.r_max, 1001));
    CHECK(rep.holds);
    CHECK_FALSE(rep.used_analytic_power_rule);
  }
}

TEST_CASE("pair condition on the four built-in couples") {
  std::vector<double> ts = log_samples(1e-6, 1e3, 2001);
  std::vector<PsiGPair> rows = standard_pairs();
  REQUIRE(rows.size() == 4);

  for (const PsiGPair& pair : rows) {
    PsiGReport rep = check_psi_g_condition(pair, ts);
    INFO("pair ", pair.name);
    CHECK(rep.holds);
    CHECK(rep.max_C >= pair.C - 1e-8 * pair.C);
  }

  SUBCASE("first and fourth couples meet the constant with equality") {
    PsiGReport r0 = check_psi_g_condition(rows[0], ts);
    CHECK(std::abs(r0.max_C - rows[0].C) <= 1e-8 * rows[0].C);
    PsiGReport r3 = check_psi_g_condition(rows[3], ts);
    CHECK(std::abs(r3.max_C - rows[3].C) <= 1e-8 * rows[3].C);
  }

  SUBCASE("log-damped couple is strict with infimum toward small t") {
    PsiGReport rep = check_psi_g_condition(rows[1], ts);
    CHECK(rep.max_C > rows[1].C);
    CHECK(rep.max_C == doctest::Approx(1.0).epsilon(1e-5));  // log(e + t) + t/(e + t) at t -> 0
    CHECK(rep.worst_t == ts.front());
  }

  SUBCASE("saturating couple reports g itself as the ratio") {
    PsiGPair pair = pair_exp_saturating(2.5);
    PsiGReport rep = check_psi_g_condition(pair, ts);
    CHECK(rep.holds);
    CHECK(rep.max_C == doctest::Approx(2.5 + ts.front() / (1.0 + ts.front())).epsilon(1e-12));
    CHECK(rep.worst_t == ts.front());
  }

  SUBCASE("power couple at other exponents") {
    for (double alpha : {0.25, 1.0, 3.0}) {
      PsiGReport rep = check_psi_g_condition(pair_power(alpha), ts);
      CHECK(rep.holds);
      CHECK(std::abs(rep.max_C - alpha) <= 1e-10 * alpha);
    }
  }
}

TEST_CASE("pair condition: finite differences fall back cleanly") {
  std::vector<double> ts = log_samples(1e-4, 1e2, 501);
  for (PsiGPair pair : standard_pairs()) {
    PsiGReport analytic = check_psi_g_condition(pair, ts);
    pair.psi.df = nullptr;
    PsiGReport fd = check_psi_g_condition(pair, ts);
    INFO("pair ", pair.name);
    // The h = 1e-5 t stencil loses ~eps/(1e-5 t) to cancellation when psi
    // varies on unit scale, so ~1.5e-7 of noise remains near t = 1e-4.
    CHECK(fd.max_C == doctest::Approx(analytic.max_C).epsilon(1e-6));
    CHECK(fd.holds == analytic.holds);
  }
}

TEST_CASE("pair condition: infimum is monotone under sample refinement") {
  // A 2m+1-point log grid over the same range contains every m+1-point node,
  // so the reported infimum can only go down (up to node roundoff).
  for (const PsiGPair& pair : standard_pairs()) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t m : {101, 201, 401, 801}) {
      PsiGReport rep = check_psi_g_condition(pair, log_samples(1e-5, 1e2, m));
      CHECK(rep.max_C <= prev + 1e-12 * std::abs(prev));
      prev = rep.max_C;
    }
  }
}

TEST_CASE("pair condition rejects sign violations") {
  PsiGPair bad;
  bad.psi = ScalarFunction{[](double t) { return 1.0 - t; }, nullptr, "1-t"};
  bad.g = sf_identity();
  bad.C = 1.0;
  CHECK_THROWS_AS(check_psi_g_condition(bad, {0.5, 2.0}), std::domain_error);
  CHECK_THROWS_AS(check_psi_g_condition(pair_power(1.0), {1.0, -2.0}), std::invalid_argument);
}

TEST_CASE("near-origin behavior of the damping products") {
  std::vector<double> probe;
  for (int k = 0; k < 40; ++k) probe.push_back(std::pow(10.0, -k * 0.2));

  SUBCASE("psi = 1/t, g = t: product constant, quotient nonincreasing") {
    ThetaReport rep = check_theta_behavior(pair_power(1.0), 2.0, probe);
    CHECK(rep.theta == ThetaBehavior::bounded_near_0);
    CHECK(rep.psi_over_g == ThetaBehavior::nonincreasing_near_0);
    CHECK(rep.acceptable());
  }

  SUBCASE("psi = t^{-1/2}, g = t: product vanishes at 0, quotient nonincreasing") {
    ThetaReport rep = check_theta_behavior(pair_power(0.5), 2.0, probe);
    CHECK(rep.theta == ThetaBehavior::bounded_near_0);
    CHECK(rep.psi_over_g == ThetaBehavior::nonincreasing_near_0);
  }

  SUBCASE("psi = e^{-t}, g = 1: both monotone") {
    PsiGPair pair;
    pair.psi = sf_exp_neg();
    pair.g = sf_constant(1.0);
    pair.C = 0.5;
    ThetaReport rep = check_theta_behavior(pair, 2.0, probe);
    CHECK(rep.theta == ThetaBehavior::nonincreasing_near_0);
    CHECK(rep.psi_over_g == ThetaBehavior::nonincreasing_near_0);
  }

  SUBCASE("oscillating unbounded quotient fails both") {
    PsiGPair pair;
    pair.psi = ScalarFunction{
        [](double t) { return (2.0 + std::sin(1.0 / t)) / t; }, nullptr, "(2+sin(1/t))/t"};
    pair.g = sf_identity();
    std::vector<double> deep;
    for (int k = 1; k <= 5000; ++k) deep.push_back(1.0 / k);
    ThetaReport rep = check_theta_behavior(pair, 2.0, deep);
    CHECK(rep.theta == ThetaBehavior::bounded_near_0);  // psi*g = 2+sin(1/t)
    CHECK(rep.psi_over_g == ThetaBehavior::fails_both);
    CHECK_FALSE(rep.acceptable());
  }

  SUBCASE("probe validation") {
    CHECK_THROWS_AS(check_theta_behavior(pair_power(1.0), 2.0, {1.0, 2.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_theta_behavior(pair_power(1.0), 2.0, {1.0, 0.5}),
                    std::invalid_argument);
  }
}

TEST_CASE("vanishing tails: bounded profiles truncate to exact zeros") {
  QuadratureGrid g = make_log_grid(1e-7, 1e2, 2001);
  // Bounded bell profile, max value 1 at the origin.
  RadialProfile u = sample_on_grid(
      g.nodes, [](double r) { return std::pow(1.0 + r * r, -0.5); },
      [](double r) { return -r * std::pow(1.0 + r * r, -1.5); });
  RadialDomain K = ball3(0.1, 10.0);
  K.kind = DomainKind::annulus;

  TailReport rep =
      check_vanishing_tails(u, WeightFunction::constant_w(1.0), WeightFunction::constant_w(3.0),
                            sf_power(5.0), 2.0, pair_power(1.0), K, {4.0, 8.0, 16.0});
  CHECK(rep.converges);
  for (double z : rep.Z1_values) CHECK(z == 0.0);
  for (double z : rep.Z2_values) CHECK(z == 0.0);
}

TEST_CASE("vanishing tails: power-law blowup decays like 1/R") {
  QuadratureGrid g = make_log_grid(1e-7, 2.0, 4001);
  RadialProfile u = sample_on_grid(
      g.nodes, [](double r) { return std::pow(r, -0.5); },
      [](double r) { return -0.5 * std::pow(r, -1.5); });
  RadialDomain K = ball3(1e-6, 1.0);
  K.kind = DomainKind::annulus;

  TailReport rep =
      check_vanishing_tails(u, WeightFunction::constant_w(1.0), WeightFunction::constant_w(1.0),
                            sf_identity(), 2.0, pair_power(1.0), K, {10.0, 100.0, 1000.0});
  CHECK(rep.converges);
  REQUIRE(rep.Z1_values.size() == 3);
  CHECK(rep.Z1_values[0] > rep.Z1_values[1]);
  CHECK(rep.Z1_values[1] > rep.Z1_values[2]);
  // Superlevel set {u >= R/2} = {r <= 4/R^2}; the masked integral of
  // a|u'| dx is (4 pi / 3) (4/R^2)^{3/2}, so Z1 ~ 33.5 / R^4.
  CHECK(rep.Z1_values[0] == doctest::Approx(33.51 / 1e4).epsilon(0.05));
  CHECK(rep.Z2_values[0] > rep.Z2_values[2]);

  SUBCASE("threshold sequence must increase") {
    CHECK_THROWS_AS(check_vanishing_tails(u, WeightFunction::constant_w(1.0),
                                          WeightFunction::constant_w(1.0), sf_identity(), 2.0,
                                          pair_power(1.0), K, {10.0, 5.0}),
                    std::invalid_argument);
  }
}
