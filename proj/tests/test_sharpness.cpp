#include <catch2/catch_amalgamated.hpp>

#include "capiso/sharpness.hpp"

using namespace capiso;

TEST_CASE("build_direction is exactly weighted-orthogonal to the bubble") {
  for (int n : {2, 3}) {
    for (double lam : {-0.5, 0.0, 0.5}) {
      CapParams p(n, lam);
      AngularGrid g = make_grid(p, n == 2 ? kPi : kPi / 2, 64);
      ScalarField phi = build_direction(p, g);
      RadialGraph w = w_profile(p, g);
      double m = 0;
      for (int node = 0; node < g.node_count(); ++node)
        m += g.weight(node) * std::pow(w[node], n - 1) * phi.values[node];
      CHECK(std::abs(m) < 1e-14);
    }
  }
}

TEST_CASE("build_direction rejects bumps leaving the cap") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 32);
  BumpSpec bad;
  bad.center1 = 0.1;
  bad.radius1 = 0.3;  // support crosses cos(theta) = 0
  CHECK_THROWS_AS(build_direction(p, g, bad), std::invalid_argument);
}

TEST_CASE("sharpness sweep scales like t^2") {
  CapParams p(3, 0.5);
  AngularGrid g = make_grid(p, kPi / 2, 128);
  std::vector<double> t_list;
  for (int i = 0; i < 6; ++i) t_list.push_back(0.01 * std::pow(10.0, i / 5.0));
  SharpnessSweep sw = sharpness_sweep(p, g, t_list);
  CHECK(sw.deficit_fit.slope == Catch::Approx(2.0).margin(0.1));
  CHECK(sw.mu_fit.slope == Catch::Approx(2.0).margin(0.1));
  REQUIRE(sw.ratio_min > 0);
  CHECK(sw.ratio_max / sw.ratio_min <= 3.0);
  CHECK_THROWS_AS(sharpness_sweep(p, g, {0.01, 0.02}), std::invalid_argument);
}

TEST_CASE("factor-20 bound on a symmetric set") {
  CapParams p(2, -0.5);
  AngularGrid g = make_grid(p, kPi, 128);
  ScalarField phi = build_direction(p, g);
  auto [f, u] = volume_normalized_graph(phi, 0.05, p);
  SymmetricFactorCheck chk = symmetric_factor_check(f, p);
  CHECK(chk.ok);
  CHECK(chk.mu0_sq <= 20.0 * chk.mu_sq + 1e-8);
}

TEST_CASE("elementary inequality holds over a Monte Carlo sample") {
  CHECK(elementary_inequality_mc(100000, 2024) == 0);
}

TEST_CASE("elementary Monte Carlo is deterministic") {
  CHECK(elementary_inequality_mc(50000, 5) == elementary_inequality_mc(50000, 5));
}

TEST_CASE("geometric estimate probe reports a bounded constant") {
  GeometricProbe probe = geometric_estimate_probe(100000, 31337);
  CHECK(probe.empirical_C > 0.0);
  // |∇(v−ŵ)| ≤ 2/|w| ≤ 4 on the sampled shell, so the slope stays below ~4.
  CHECK(probe.empirical_C < 4.5);
}
