#include <catch2/catch_amalgamated.hpp>

#include "capiso/capillarity.hpp"
#include "capiso/fuglede.hpp"
#include "capiso/oracle.hpp"

using namespace capiso;

namespace {

AngularGrid half(const CapParams& p, int res) {
  return make_grid(p, p.n == 2 ? kPi : kPi / 2, res);
}

RadialGraph perturbed_bubble(const CapParams& p, const AngularGrid& g,
                             std::uint64_t seed, double cap) {
  Rng rng(seed);
  ScalarField u = random_perturbation(g, rng, cap);
  ScalarField f = w_profile(p, g).field;
  for (int i = 0; i < f.size(); ++i) f.values[i] += u.values[i];
  return RadialGraph(std::move(f));
}

}  // namespace

TEST_CASE("bubble perimeter equals n times its volume") {
  for (int n : {2, 3}) {
    for (double lam : {-0.5, 0.0, 0.5}) {
      CapParams p(n, lam);
      AngularGrid g = half(p, 128);
      RadialGraph w = w_profile(p, g);
      CHECK(perimeter_lambda(w, p) ==
            Catch::Approx(n * cap_volume_exact(n, lam)).margin(1e-8));
    }
  }
}

TEST_CASE("wetted area: direct boundary trace equals the flux identity") {
  for (int n : {2, 3}) {
    for (double lam : {-0.5, 0.5}) {
      CapParams p(n, lam);
      AngularGrid g = half(p, 128);
      RadialGraph f = perturbed_bubble(p, g, 42 + n, 0.15);
      WettedArea wa = wetted_area(f, p);
      CHECK(std::abs(wa.direct - wa.flux) < 1e-6);
    }
  }
}

TEST_CASE("oscillation asymmetry divergence identity") {
  for (int n : {2, 3}) {
    for (double lam : {-0.5, 0.0, 0.5}) {
      CapParams p(n, lam);
      AngularGrid g = half(p, 128);
      RadialGraph f = perturbed_bubble(p, g, 7 * n + 1, 0.15);
      CHECK(std::abs(mu0_sq(f, p) - mu0_sq_divergence(f, p)) < 1e-6);
      CHECK(mu0_sq(f, p) >= 0.0);
    }
  }
}

TEST_CASE("mu0_sq vanishes on the bubble") {
  for (double lam : {-0.5, 0.5}) {
    CapParams p(3, lam);
    AngularGrid g = half(p, 64);
    CHECK(std::abs(mu0_sq(w_profile(p, g), p)) < 1e-12);
  }
}

TEST_CASE("bubble_radial points lie on the shifted sphere") {
  CapParams p(3, 0.4);
  AngularGrid g = half(p, 32);
  Vec xp(3);
  xp[0] = 0.2;
  double s = 1.3;
  for (int node : {0, 7, 19, 32}) {
    Vec x = g.direction(node);
    double r = bubble_radial(p, xp, s, x);
    Vec y = r * x - xp;
    y[2] += s * p.lambda;
    CHECK(y.norm() == Catch::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("bubble_radial rejects translations that exclude the origin") {
  CapParams p(2, 0.0);
  AngularGrid g = half(p, 16);
  Vec xp(2);
  xp[0] = 1.5;  // beyond the validity radius s√(1−λ²) = 1
  CHECK_THROWS_AS(bubble_radial(p, xp, 1.0, g.direction(0)), std::domain_error);
}

TEST_CASE("symmetric difference with itself is zero and scales correctly") {
  CapParams p(2, 0.5);
  AngularGrid g = half(p, 64);
  RadialGraph w = w_profile(p, g);
  CHECK(sym_diff_bubble(w, p, 0.0, 1.0) < 1e-12);
  // Disjointness bound: |E Δ sB| ≤ |E| + |sB|.
  double v = graph_volume(w);
  CHECK(sym_diff_bubble(w, p, 0.0, 2.0) ==
        Catch::Approx(std::pow(2.0, p.n) * v - v).epsilon(1e-10));
}

TEST_CASE("fraenkel_alpha recovers a translated bubble") {
  for (int n : {2, 3}) {
    CapParams p(n, 0.3);
    AngularGrid g = half(p, 128);
    double t0 = n == 2 ? -0.21 : 0.21;
    Vec xp(n);
    xp[0] = t0;
    ScalarField fv(g);
    for (int node = 0; node < g.node_count(); ++node)
      fv.values[node] = bubble_radial(p, xp, 1.0, g.direction(node));
    // n = 3 axisymmetric grids cannot represent an off-axis bubble; use n = 2
    // for the exact-recovery check and n = 3 for the bound at the bubble.
    if (n == 2) {
      auto [alpha, cand] = fraenkel_alpha(RadialGraph(fv), p);
      CHECK(alpha < 1e-6);
      CHECK(cand.offset == Catch::Approx(t0).margin(1e-4));
    } else {
      auto [alpha, cand] = fraenkel_alpha(w_profile(p, g), p);
      CHECK(alpha < 1e-10);
    }
  }
}

TEST_CASE("mu_sq is scale invariant") {
  CapParams p(2, -0.4);
  AngularGrid g = half(p, 64);
  RadialGraph f = perturbed_bubble(p, g, 11, 0.1);
  double m1 = mu_sq(f, p).mu_sq;
  double m2 = mu_sq(scaled(f, 2.9), p).mu_sq;
  CHECK(m1 == Catch::Approx(m2).epsilon(1e-9));
}

TEST_CASE("deficit is nonnegative and zero at the bubble") {
  CapParams p(3, 0.5);
  AngularGrid g = half(p, 128);
  CHECK(std::abs(deficit(w_profile(p, g), p)) < 1e-10);
  RadialGraph f = perturbed_bubble(p, g, 3, 0.2);
  CHECK(deficit(f, p) > 0.0);
}

TEST_CASE("psi clamp and the piecewise moment") {
  CHECK(psi_clamp(150.0) == 100.0);
  CHECK(psi_clamp(-123456.0) == -100.0);
  CHECK(psi_clamp(3.5) == 3.5);
  // Against midpoint quadrature of the same integrand.
  for (auto [a, b, f] : {std::tuple<double, double, double>{0.7, -0.3, 2.0},
                         {80.0, 0.0, 3.0},
                         {-120.0, 50.0, 1.5}}) {
    double exact = capiso::detail::clamped_moment(a, b, f, 3);
    double num = 0;
    int m = 20000;
    for (int i = 0; i < m; ++i) {
      double r = (i + 0.5) * f / m;
      num += psi_clamp(a * r + b) * r * r * f / m;
    }
    CHECK(exact == Catch::Approx(num).margin(1e-4 * (1.0 + std::abs(exact))));
  }
}

TEST_CASE("b_tilde of a horizontally shifted bubble is nonzero and centered back") {
  CapParams p(2, 0.0);
  AngularGrid g = half(p, 128);
  Vec xp(2);
  xp[0] = 0.2;
  ScalarField fv(g);
  for (int node = 0; node < g.node_count(); ++node)
    fv.values[node] = bubble_radial(p, xp, 1.0, g.direction(node));
  RadialGraph f(fv);
  Barycenters bc = barycenters(f);
  // ψ is the identity on bounded sets, so b̃ = ∫_E x₁ = |E| x̄₁.
  CHECK(bc.b_tilde[0] ==
        Catch::Approx(graph_volume(f) * bc.bar_H[0]).epsilon(1e-8));
  BtildeCenter ctr = btilde_center(f);
  REQUIRE(ctr.found);
  CHECK(ctr.x_star[0] == Catch::Approx(0.2).margin(1e-6));
}

TEST_CASE("cap_report on the bubble is clean") {
  CapParams p(3, 0.5);
  AngularGrid g = half(p, 128);
  CapReport r = cap_report(w_profile(p, g), p);
  CHECK(std::abs(r.deficit) < 1e-10);
  CHECK(r.mu_sq < 1e-10);
  CHECK(r.alpha < 1e-10);
  CHECK(r.mu_r_E == Catch::Approx(1.0).margin(1e-10));
  CHECK(std::abs(r.barycenter_H[0]) < 1e-12);
}
