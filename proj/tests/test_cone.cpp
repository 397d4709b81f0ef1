#include <catch2/catch_amalgamated.hpp>

#include "capiso/cone.hpp"
#include "capiso/fuglede.hpp"

using namespace capiso;

TEST_CASE("cone parameters validated") {
  CHECK_THROWS_AS(ConeSpec(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec(3, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ConeSpec(1, 0.5), std::invalid_argument);
  CHECK(ConeSpec(3, kPi / 2).is_half_space());
  CHECK_FALSE(ConeSpec(3, 1.0).is_half_space());
}

TEST_CASE("K_volume closed forms agree with the grid") {
  for (int n : {2, 3}) {
    for (double om : {0.4, kPi / 3, kPi / 2}) {
      ConeSpec spec(n, om);
      AngularGrid g = cone_grid(spec, 256);
      CHECK(K_volume(spec) ==
            Catch::Approx(cap_cross_section_area(g) / n).margin(1e-10));
    }
  }
}

TEST_CASE("unit sector: perimeter, deficit and oscillation vanish") {
  for (int n : {2, 3}) {
    ConeSpec spec(n, kPi / 3);
    AngularGrid g = cone_grid(spec, 128);
    RadialGraph f(ScalarField(g, 1.0));
    CHECK(perimeter_C(f, spec) ==
          Catch::Approx(cap_cross_section_area(g)).epsilon(1e-13));
    CHECK(std::abs(deficit_C(f, spec)) < 1e-12);
    CHECK(mu_C0_sq(f, spec) < 1e-12);
    CHECK(mu_C_sq(f, spec).mu_sq < 1e-12);
    auto [alpha, cand] = alpha_C(f, spec);
    CHECK(alpha < 1e-12);
  }
}

TEST_CASE("cone divergence identity on random graphs") {
  for (int n : {2, 3}) {
    ConeSpec spec(n, 1.1);
    AngularGrid g = cone_grid(spec, 128);
    Rng rng(5, n);
    ScalarField u = random_perturbation(g, rng, 0.2);
    ScalarField fv(g, 1.0);
    for (int i = 0; i < u.size(); ++i) fv.values[i] += u.values[i];
    RadialGraph f(fv);
    CHECK(std::abs(mu_C0_sq(f, spec) - mu_C0_sq_divergence(f, spec)) < 1e-6);
    CHECK(deficit_C(f, spec) > 0.0);
  }
}

TEST_CASE("half-space cone equals lambda=0 capillarity") {
  for (int n : {2, 3}) {
    ConeSpec hs(n, kPi / 2);
    CapParams p(n, 0.0);
    AngularGrid g = cone_grid(hs, 64);
    Rng rng(17, n);
    ScalarField u = random_perturbation(g, rng, 0.2);
    ScalarField fv = w_profile(p, g).field;
    for (int i = 0; i < u.size(); ++i) fv.values[i] += u.values[i];
    RadialGraph f(fv);
    CHECK(std::abs(perimeter_C(f, hs) - perimeter_lambda(f, p)) < 1e-10);
    CHECK(std::abs(mu_C0_sq(f, hs) - mu0_sq(f, p)) < 1e-10);
    CHECK(std::abs(deficit_C(f, hs) - deficit(f, p)) < 1e-10);
  }
}

TEST_CASE("cone Fuglede form closed form") {
  // u = cos(pi theta / omega) on the n=3 cone of opening omega.
  ConeSpec spec(3, kPi / 2);
  AngularGrid g = cone_grid(spec, 128);
  ScalarField u = ScalarField::sampled(g, [](double t) { return std::cos(2 * t); });
  SobolevNorms nn = sobolev_norms(g, u);
  double expected = 0.5 * ((nn.H1_sq - nn.L2_sq) - 2.0 * nn.L2_sq);
  CHECK(cone_fuglede_form(u, spec) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cone_report is populated") {
  ConeSpec spec(2, 0.9);
  AngularGrid g = cone_grid(spec, 64);
  Rng rng(23, 0);
  ScalarField u = random_perturbation(g, rng, 0.1);
  ScalarField fv(g, 1.0);
  for (int i = 0; i < u.size(); ++i) fv.values[i] += u.values[i];
  ConeReport r = cone_report(RadialGraph(fv), spec);
  CHECK(r.volume > 0);
  CHECK(r.perimeter_C > 0);
  CHECK(r.deficit_C >= 0);
  CHECK(r.mu_C_sq >= 0);
  CHECK(r.alpha_C >= 0);
}
