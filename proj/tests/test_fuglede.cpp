#include <catch2/catch_amalgamated.hpp>

#include "capiso/cone.hpp"
#include "capiso/fuglede.hpp"
#include "capiso/sharpness.hpp"

using namespace capiso;

TEST_CASE("loglog_fit on exact power data") {
  std::vector<std::pair<double, double>> cubic, quad;
  for (double s : {0.001, 0.003, 0.01, 0.03, 0.1, 0.3}) {
    cubic.push_back({s, s * s * s});
    quad.push_back({s, 2 * s * s});
  }
  FitResult f3 = loglog_fit(cubic);
  CHECK(f3.slope == Catch::Approx(3.0).margin(1e-12));
  CHECK(f3.r_squared == Catch::Approx(1.0).margin(1e-12));
  FitResult f2 = loglog_fit(quad);
  CHECK(f2.slope == Catch::Approx(2.0).margin(1e-12));
  CHECK(f2.intercept == Catch::Approx(std::log(2.0)).margin(1e-12));
}

TEST_CASE("loglog_fit tolerates small noise") {
  Rng rng(99);
  std::vector<std::pair<double, double>> pts;
  for (double s : {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1}) {
    pts.push_back({s, s * s * (1.0 + 0.01 * rng.uniform(-1.0, 1.0))});
  }
  FitResult f = loglog_fit(pts);
  CHECK(f.slope == Catch::Approx(2.0).margin(0.05));
}

TEST_CASE("loglog_fit flags floored data as degenerate") {
  std::vector<std::pair<double, double>> pts;
  for (double s : {0.001, 0.01, 0.1, 0.5, 1.0}) pts.push_back({s, 0.0});
  FitResult f = loglog_fit(pts);
  CHECK(f.degenerate);
  CHECK(f.dropped == 5);
}

TEST_CASE("B_form reduces to the cone form at lambda = 0") {
  for (int n : {2, 3}) {
    CapParams p(n, 0.0);
    AngularGrid g = make_grid(p, n == 2 ? kPi : kPi / 2, 64);
    Rng rng(4, n);
    ScalarField u = random_perturbation(g, rng, 0.7);
    double b = B_form(u, p);
    double c = cone_fuglede_form(u, ConeSpec(n, kPi / 2));
    CHECK(std::abs(b - c) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("volume_normalized_graph restores the bubble volume exactly") {
  CapParams p(3, 0.5);
  AngularGrid g = make_grid(p, kPi / 2, 64);
  Rng rng(6);
  ScalarField phi = random_perturbation(g, rng, 0.3);
  auto [f, u] = volume_normalized_graph(phi, 1.0, p);
  CHECK(graph_volume(f) ==
        Catch::Approx(graph_volume(w_profile(p, g))).epsilon(1e-14));
  // u is the realized difference from the bubble.
  RadialGraph w = w_profile(p, g);
  for (int i : {0, 17, 40}) CHECK(f[i] == Catch::Approx(w[i] + u.values[i]));
}

TEST_CASE("expansion residual slope for one combo") {
  CapParams p(3, 0.5);
  AngularGrid g = make_grid(p, kPi / 2, 128);
  ScalarField phi = build_direction(p, g);
  std::vector<double> s_list;
  for (int i = 0; i < 8; ++i) s_list.push_back(1e-3 * std::pow(100.0, i / 7.0));
  FitResult fit = expansion_residual_sweep(phi, s_list, p);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.slope > 2.7);
  CHECK(fit.slope < 3.3);
}

TEST_CASE("random_perturbation has the requested C1 norm and is reproducible") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 64);
  Rng a(123, 4), b(123, 4), c(123, 5);
  ScalarField u1 = random_perturbation(g, a, 0.15);
  ScalarField u2 = random_perturbation(g, b, 0.15);
  ScalarField u3 = random_perturbation(g, c, 0.15);
  CHECK(u1.values == u2.values);
  CHECK(u1.values != u3.values);
  double sup0 = 0;
  for (double v : u1.values) sup0 = std::max(sup0, std::abs(v));
  ScalarField grad = tangential_gradient(g, u1);
  double sup1 = 0;
  for (double v : grad.values) sup1 = std::max(sup1, std::abs(v));
  CHECK(sup0 + sup1 == Catch::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("random_perturbation uses the same modes at any resolution") {
  CapParams p(2, 0.0);
  AngularGrid g1 = make_grid(p, kPi, 64);
  AngularGrid g2 = make_grid(p, kPi, 128);
  Rng a(55, 3), b(55, 3);
  ScalarField u1 = random_perturbation(g1, a, 0.1);
  ScalarField u2 = random_perturbation(g2, b, 0.1);
  // Every coarse node appears on the fine grid at the doubled index.
  double worst = 0;
  for (int j = 0; j < g1.theta_count(); ++j)
    worst = std::max(worst, std::abs(u1.values[j] - u2.values[2 * j]));
  CHECK(worst < 1e-3);
}

TEST_CASE("chain ratios are finite on a small ensemble") {
  CapParams p(2, 0.5);
  ChainCheck cc = chain_check(10, 0.05, p, 77, 64);
  REQUIRE(cc.mu_over_h1.count > 0);
  REQUIRE(cc.h1_over_deficit.count > 0);
  CHECK(std::isfinite(cc.mu_over_h1.max));
  CHECK(std::isfinite(cc.h1_over_deficit.max));
  CHECK(cc.mu_over_h1.min > 0.0);
  CHECK(cc.mu_over_h1.stability < 0.05);
  CHECK(cc.h1_over_deficit.stability < 0.05);
}

TEST_CASE("nash_report skips zero fields and rejects bad delta") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 32);
  ScalarField zero(g), one(g, 1.0);
  auto rows = nash_report({zero, one}, {0.5});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].skipped);
  CHECK_FALSE(rows[1].skipped);
  CHECK_THROWS_AS(nash_report({one}, {1.5}), std::invalid_argument);
}
