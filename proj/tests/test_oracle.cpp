#include <catch2/catch_amalgamated.hpp>

#include "capiso/fuglede.hpp"
#include "capiso/oracle.hpp"

using namespace capiso;

TEST_CASE("cap volume closed forms") {
  CHECK(cap_volume_exact(3, 0.0) == Catch::Approx(2 * kPi / 3).margin(1e-14));
  CHECK(cap_volume_exact(2, 0.0) == Catch::Approx(kPi / 2).margin(1e-14));
  CHECK(cap_volume_exact(3, 0.5) ==
        Catch::Approx(kPi * 0.25 * 2.5 / 3.0).margin(1e-14));
  CHECK_THROWS_AS(cap_volume_exact(4, 0.0), std::invalid_argument);
}

TEST_CASE("mc_volume estimates a ball within 3 standard errors") {
  BoundingBox box{Vec(3), Vec(3)};
  for (int d = 0; d < 3; ++d) {
    box.lo[d] = -1.0;
    box.hi[d] = 1.0;
  }
  McEstimate e = mc_volume([](const Vec& x) { return x.norm2() < 1.0; }, box,
                           200000, 91);
  CHECK(std::abs(e.value - 4.0 * kPi / 3.0) <= 3.0 * e.standard_error);
  CHECK_THROWS_AS(mc_volume([](const Vec&) { return true; }, box, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("mc_volume is deterministic bit for bit") {
  BoundingBox box{Vec(2), Vec(2)};
  box.lo[0] = box.lo[1] = -1.0;
  box.hi[0] = box.hi[1] = 1.0;
  auto inside = [](const Vec& x) { return x.norm2() < 0.7; };
  McEstimate a = mc_volume(inside, box, 50000, 12);
  McEstimate b = mc_volume(inside, box, 50000, 12);
  CHECK(a.value == b.value);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("point membership in a graph set") {
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 64);
  RadialGraph f(ScalarField(g, 1.0));  // upper half-disc
  Vec in(2), out(2), below(2);
  in[0] = 0.3;
  in[1] = 0.4;
  out[0] = 0.9;
  out[1] = 0.9;
  below[0] = 0.1;
  below[1] = -0.1;
  CHECK(point_in_graph_set(f, in));
  CHECK_FALSE(point_in_graph_set(f, out));
  CHECK_FALSE(point_in_graph_set(f, below));
}

TEST_CASE("mc_symdiff vanishes at the bubble and cross-validates quadrature") {
  CapParams p(3, -0.5);
  AngularGrid g = make_grid(p, kPi / 2, 64);
  RadialGraph w = w_profile(p, g);
  McEstimate zero = mc_symdiff(w, p, 0.0, 1.0, 100000, 8);
  CHECK(zero.value <= 3.0 * std::max(zero.standard_error, 1e-3));
  Rng rng(64, 0);
  ScalarField u = random_perturbation(g, rng, 0.2);
  ScalarField fv = w.field;
  for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
  RadialGraph f(fv);
  double quad = sym_diff_bubble(f, p, 0.05, 1.02);
  McEstimate mc = mc_symdiff(f, p, 0.05, 1.02, 400000, 9);
  CHECK(std::abs(quad - mc.value) <= 3.0 * mc.standard_error);
  CHECK_THROWS_AS(mc_symdiff(w, p, 0.0, 0.0, 100000, 1), std::invalid_argument);
}

TEST_CASE("richardson on synthetic data") {
  auto fourth_order = [](int res) { return 2.0 + 5.0 * std::pow(res, -4.0); };
  RichardsonResult r = richardson(fourth_order, {32, 64, 128, 256});
  CHECK(r.monotone);
  CHECK(r.observed_order == Catch::Approx(4.0).margin(0.01));
  CHECK(r.value == Catch::Approx(2.0).margin(1e-9));

  auto exact = [](int) { return 7.0; };
  RichardsonResult re = richardson(exact, {16, 32, 64});
  CHECK(re.error_estimate == 0.0);

  auto oscillating = [](int res) { return res == 32 || res == 128 ? 1.0 : -1.0; };
  RichardsonResult ro = richardson(oscillating, {16, 32, 64, 128});
  CHECK_FALSE(ro.monotone);

  CHECK_THROWS_AS(richardson(exact, {16, 32}), std::invalid_argument);
}

TEST_CASE("grid functionals converge at high order") {
  CapParams p(3, 0.5);
  auto per = [&](int res) {
    AngularGrid g = make_grid(p, kPi / 2, res);
    return perimeter_lambda(w_profile(p, g), p);
  };
  double exact = 3.0 * cap_volume_exact(3, 0.5);
  CHECK(std::abs(per(32) - exact) < 1e-8);
  CHECK(std::abs(per(64) - exact) < 1e-9);
}
