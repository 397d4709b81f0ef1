#include <catch2/catch_amalgamated.hpp>

#include "capiso/graph.hpp"
#include "capiso/oracle.hpp"

using namespace capiso;

TEST_CASE("bubble profile satisfies |w x + lambda e_n| = 1") {
  for (int n : {2, 3}) {
    for (double lam : {-0.7, -0.2, 0.0, 0.4}) {
      CapParams p(n, lam);
      AngularGrid g = make_grid(p, n == 2 ? kPi : kPi / 2, 32);
      RadialGraph w = w_profile(p, g);
      double worst = 0;
      for (int node = 0; node < g.node_count(); ++node) {
        Vec y = w[node] * g.direction(node);
        y[n - 1] += lam;
        worst = std::max(worst, std::abs(y.norm() - 1.0));
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("radial graphs must be positive") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 16);
  ScalarField v(g, 1.0);
  v.values[3] = 0.0;
  CHECK_THROWS_AS(RadialGraph(v), std::invalid_argument);
}

TEST_CASE("volume scales like s^n") {
  for (int n : {2, 3}) {
    CapParams p(n, 0.3);
    AngularGrid g = make_grid(p, n == 2 ? kPi : kPi / 2, 64);
    RadialGraph w = w_profile(p, g);
    double v1 = graph_volume(w);
    double v2 = graph_volume(scaled(w, 1.7));
    CHECK(v2 == Catch::Approx(std::pow(1.7, n) * v1).epsilon(1e-13));
  }
}

TEST_CASE("bubble volume matches the closed form") {
  for (int n : {2, 3}) {
    for (double lam : {-0.5, 0.0, 0.5}) {
      CapParams p(n, lam);
      AngularGrid g = make_grid(p, n == 2 ? kPi : kPi / 2, 128);
      CHECK(graph_volume(w_profile(p, g)) ==
            Catch::Approx(cap_volume_exact(n, lam)).margin(1e-10));
    }
  }
}

TEST_CASE("unit sphere graph has the expected area element and normal") {
  CapParams p(3, 0.0);
  AngularGrid g = make_grid(p, kPi / 2, 64);
  ScalarField one(g, 1.0);
  RadialGraph f(one);
  SurfaceGeometry sg = surface_geometry(f);
  double area = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    area += g.weight(node) * sg.area[node];
    Vec nu = unit_normal(f, node);
    CHECK(std::abs(nu.norm() - 1.0) < 1e-12);
    CHECK(std::abs(dot(nu, g.direction(node)) - 1.0) < 1e-10);
  }
  CHECK(area == Catch::Approx(2 * kPi).margin(1e-9));
}

TEST_CASE("graph distance separates distinct graphs") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 32);
  RadialGraph a(ScalarField(g, 1.0));
  ScalarField v(g, 1.0);
  v.values[5] += 0.25;
  RadialGraph b(v);
  auto [sup0, sup1] = graph_distance(a, b);
  CHECK(sup0 == Catch::Approx(0.25));
  CHECK(sup1 > 0.0);
}
