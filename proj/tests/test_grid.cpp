#include <catch2/catch_amalgamated.hpp>

#include "capiso/grid.hpp"

using namespace capiso;

TEST_CASE("make_grid validates its inputs") {
  CapParams p2(2, 0.0), p3(3, 0.0);
  CHECK_THROWS_AS(make_grid(p2, kPi, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(p2, kPi, 66), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(p2, 0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(p2, 4.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(p2, kPi, 64, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(p3, kPi / 2, 64, 4), std::invalid_argument);
  CHECK_NOTHROW(make_grid(p3, kPi / 2, 64, 16));
}

TEST_CASE("cross-section areas match closed forms") {
  CapParams p2(2, 0.0), p3(3, 0.0);
  AngularGrid g2 = make_grid(p2, kPi, 64);
  AngularGrid g3 = make_grid(p3, kPi / 2, 64);
  AngularGrid g3f = make_grid(p3, kPi / 2, 64, 32);
  CHECK(cap_cross_section_area(g2) == Catch::Approx(kPi).margin(1e-12));
  CHECK(cap_cross_section_area(g3) == Catch::Approx(2 * kPi).margin(1e-10));
  CHECK(cap_cross_section_area(g3f) == Catch::Approx(2 * kPi).margin(1e-10));
}

TEST_CASE("Boole weights integrate quartics exactly") {
  CapParams p2(2, 0.0);
  AngularGrid g = make_grid(p2, 1.0, 8);
  double s = 0;
  for (int j = 0; j < g.theta_count(); ++j)
    s += g.theta_weights[j] * std::pow(g.theta[j], 4);
  CHECK(s == Catch::Approx(0.2).margin(1e-14));
}

TEST_CASE("theta derivative is 4th order accurate") {
  CapParams p2(2, 0.0);
  auto err = [&](int res) {
    AngularGrid g = make_grid(p2, kPi, res);
    ScalarField u = ScalarField::sampled(g, [](double t) { return std::cos(3 * t); });
    ScalarField du = d_theta(u);
    double worst = 0;
    for (int j = 0; j < g.theta_count(); ++j)
      worst = std::max(worst, std::abs(du.values[j] + 3 * std::sin(3 * g.theta[j])));
    return worst;
  };
  double e1 = err(32), e2 = err(64);
  CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("d_theta_transpose is the exact adjoint") {
  CapParams p3(3, 0.0);
  AngularGrid g = make_grid(p3, kPi / 2, 32);
  ScalarField u(g), v(g);
  for (int j = 0; j < g.node_count(); ++j) {
    u.values[j] = std::sin(1.0 + j);
    v.values[j] = std::cos(2.0 + 3 * j);
  }
  ScalarField du = d_theta(u), dtv = d_theta_transpose(v);
  double a = 0, b = 0;
  for (int j = 0; j < g.node_count(); ++j) {
    a += du.values[j] * v.values[j];
    b += u.values[j] * dtv.values[j];
  }
  CHECK(a == Catch::Approx(b).epsilon(1e-13));
}

TEST_CASE("Sobolev norms of cos(theta) on the hemisphere") {
  CapParams p3(3, 0.0);
  AngularGrid g = make_grid(p3, kPi / 2, 128);
  ScalarField u = ScalarField::sampled(g, [](double t) { return std::cos(t); });
  SobolevNorms n = sobolev_norms(g, u);
  CHECK(n.L2_sq == Catch::Approx(2 * kPi / 3).margin(1e-9));
  CHECK(n.H1_sq == Catch::Approx(2 * kPi).margin(1e-6));
  CHECK(n.L1 == Catch::Approx(kPi).margin(1e-9));
}

TEST_CASE("field interpolation is high order") {
  CapParams p2(2, 0.0);
  AngularGrid g = make_grid(p2, kPi, 64);
  ScalarField u = ScalarField::sampled(g, [](double t) { return std::sin(2 * t); });
  double worst = 0;
  for (double t : {0.013, 0.4447, 1.9, 3.1}) {
    worst = std::max(worst, std::abs(field_value_at(u, t) - std::sin(2 * t)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("azimuthal layout integrates a phi-dependent field") {
  CapParams p3(3, 0.0);
  AngularGrid g = make_grid(p3, kPi / 2, 32, 32);
  ScalarField u(g);
  for (int node = 0; node < g.node_count(); ++node)
    u.values[node] = 1.0 + 0.3 * std::cos(g.phi(node));
  // The cosine integrates to zero over the full circle.
  CHECK(integrate_surface(g, u) == Catch::Approx(2 * kPi).margin(1e-10));
}
