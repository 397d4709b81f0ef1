#include <catch2/catch_amalgamated.hpp>

#include "capiso/selection.hpp"

using namespace capiso;

TEST_CASE("k_lambda thresholds") {
  CHECK(k_lambda(0.0) == 10);
  CHECK(k_lambda(0.5) == 10);
  CHECK(k_lambda(-0.5) == 10);
  CHECK(k_lambda(0.9) == 40);
  CHECK_THROWS_AS(k_lambda(1.0), std::invalid_argument);
}

TEST_CASE("problem construction enforces k and Lambda bounds") {
  CapParams p(3, 0.9);
  AngularGrid g = make_grid(p, kPi / 2, 32);
  SelectionConfig cfg;
  cfg.k = 16;  // below k_lambda(0.9) = 40
  CHECK_THROWS_AS(SelectionProblem(p, g, cfg), std::invalid_argument);
  cfg.k = 64;
  cfg.Lambda = 5.0;  // must exceed 2n = 6
  CHECK_THROWS_AS(SelectionProblem(p, g, cfg), std::invalid_argument);
  cfg.Lambda = 0;
  CHECK_NOTHROW(SelectionProblem(p, g, cfg));
  ConeSpec spec(2, kPi / 3);
  AngularGrid gc = cone_grid(spec, 32);
  SelectionConfig cc;
  cc.k = 4;
  CHECK_THROWS_AS(SelectionProblem(spec, gc, cc), std::invalid_argument);
}

TEST_CASE("analytic gradient matches finite differences") {
  SelectionConfig cfg;
  CapParams p(3, 0.3);
  AngularGrid g = make_grid(p, kPi / 2, 64);
  SelectionProblem prob(p, g, cfg);
  Rng rng(31, 0);
  ScalarField u = random_perturbation(g, rng, 0.1);
  ScalarField fv = w_profile(p, g).field;
  for (int i = 0; i < fv.size(); ++i) fv.values[i] += u.values[i];
  Rng probe(31, 1);
  CHECK(gradient_fd_error(prob, RadialGraph(fv), probe, 10) < 1e-5);

  ConeSpec spec(2, kPi / 3);
  AngularGrid gc = cone_grid(spec, 64);
  SelectionProblem probc(spec, gc, cfg);
  Rng rng2(31, 2);
  ScalarField uc = random_perturbation(gc, rng2, 0.1);
  ScalarField fc(gc, 1.0);
  for (int i = 0; i < fc.size(); ++i) fc.values[i] += uc.values[i];
  Rng probe2(31, 3);
  CHECK(gradient_fd_error(probc, RadialGraph(fc), probe2, 10) < 1e-5);
}

TEST_CASE("descent from a perturbed start is monotone and recovers the bubble") {
  SelectionConfig cfg;
  cfg.k = 64;
  CapParams p(3, 0.0);
  AngularGrid g = make_grid(p, kPi / 2, 64);
  SelectionProblem prob(p, g, cfg);
  ScalarField init = w_profile(p, g).field;
  for (int j = 0; j < g.node_count(); ++j)
    init.values[j] *= 1.0 + 0.1 * std::cos(2.0 * g.theta[j]);
  auto [f, trace] = minimize_selection(prob, RadialGraph(init), cfg);
  for (std::size_t i = 1; i < trace.values.size(); ++i)
    CHECK(trace.values[i] <= trace.values[i - 1] + 1e-12);
  CHECK(trace.volume_gap < 1e-6);
  CHECK(trace.sym_diff_to_reference < 1e-4);
}

TEST_CASE("value at the bubble equals the penalized perimeter") {
  SelectionConfig cfg;
  CapParams p(2, 0.4);
  AngularGrid g = make_grid(p, kPi, 64);
  SelectionProblem prob(p, g, cfg);
  RadialGraph w = w_profile(p, g);
  // At the bubble: volume gap 0, mu0 = 0, b_tilde = 0.
  CHECK(selection_value(prob, w) ==
        Catch::Approx(perimeter_lambda(w, p)).margin(1e-8));
}

TEST_CASE("multistart returns the best of its runs") {
  SelectionConfig cfg;
  cfg.k = 32;
  CapParams p(2, 0.0);
  AngularGrid g = make_grid(p, kPi, 64);
  SelectionProblem prob(p, g, cfg);
  auto [f, trace] = minimize_multistart(prob, cfg);
  CHECK(trace.values.back() <=
        selection_value(prob, w_profile(p, g)) + 1e-10);
}
