#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capiso/cone.hpp"
#include "capiso/fuglede.hpp"
#include "capiso/linalg.hpp"

namespace capiso {

// Least integer k_λ ≥ max{10, 4/(1−|λ|)}.
inline int k_lambda(double lambda) {
  if (!(std::abs(lambda) < 1.0))
    throw std::invalid_argument("k_lambda: |lambda| must be < 1");
  double bound = std::max(10.0, 4.0 / (1.0 - std::abs(lambda)));
  return static_cast<int>(std::ceil(bound - 1e-12));
}

struct SelectionConfig {
  int k = 64;
  double Lambda = 0;  // defaulted to 4n by the problem builder when 0
  int max_iters = 5000;
  double grad_tol = 1e-8;
  double armijo_c = 1e-4;
  double init_step = 1.0;
};

// Shared discretization of F_k (capillarity) and G_k (cones): both are
// P + Λ||F|−v₀| − (1/k)μ²₀ + |b̃|² with λ = 0 and a free lateral contact in
// the cone case.  Restricted to n = 2 general graphs and axisymmetric n ≥ 3.
struct SelectionProblem {
  CapParams p;
  const AngularGrid* grid = nullptr;
  double target_volume = 0;
  double Lambda = 0;
  int k = 0;
  bool include_btilde = false;

  SelectionProblem(const CapParams& params, const AngularGrid& g,
                   const SelectionConfig& cfg)
      : p(params), grid(&g) {
    if (g.azimuth_count != 0)
      throw std::invalid_argument("SelectionProblem: azimuthal grids unsupported");
    if (cfg.k < k_lambda(params.lambda))
      throw std::invalid_argument("SelectionProblem: k below k_lambda");
    target_volume = bubble_volume(params, g);
    Lambda = cfg.Lambda > 0 ? cfg.Lambda : 4.0 * params.n;
    if (!(Lambda > 2.0 * params.n))
      throw std::invalid_argument("SelectionProblem: Lambda must exceed 2n");
    k = cfg.k;
    include_btilde = params.n == 2;
  }

  // Cone variant: G_k over the cone cross-section grid.
  SelectionProblem(const ConeSpec& spec, const AngularGrid& g,
                   const SelectionConfig& cfg)
      : p(spec.n, 0.0), grid(&g) {
    if (g.azimuth_count != 0)
      throw std::invalid_argument("SelectionProblem: azimuthal grids unsupported");
    if (cfg.k <= 4)
      throw std::invalid_argument("SelectionProblem: cone functional needs k > 4");
    target_volume = cap_cross_section_area(g) / g.n;
    Lambda = cfg.Lambda > 0 ? cfg.Lambda : 4.0 * spec.n;
    if (!(Lambda > 2.0 * spec.n))
      throw std::invalid_argument("SelectionProblem: Lambda must exceed 2n");
    k = cfg.k;
    include_btilde = spec.is_half_space() && spec.n == 2;
  }
};

namespace detail {

// Per-theta-node polar cosine/sine (signed for the n = 2 parametrization).
inline void polar_cs(const AngularGrid& g, std::vector<double>& c,
                     std::vector<double>& s) {
  int m = g.theta_count();
  c.resize(m);
  s.resize(m);
  for (int j = 0; j < m; ++j) {
    if (g.n == 2) {
      double a = g.signed_angle(j);
      c[j] = std::cos(a);
      s[j] = std::sin(a);
    } else {
      c[j] = std::cos(g.theta[j]);
      s[j] = std::sin(g.theta[j]);
    }
  }
}

// H¹ preconditioner M = W + DᵀWD built from the grid weights and the theta
// finite-difference operator; tames the k²-stiffness of the perimeter Hessian
// so descent reaches tight stationarity tolerances.
inline Cholesky h1_preconditioner(const AngularGrid& g) {
  int m = g.node_count();
  std::vector<double> D(m * m, 0.0);
  ScalarField e(g), col(g);
  for (int j = 0; j < m; ++j) {
    std::fill(e.values.begin(), e.values.end(), 0.0);
    e.values[j] = 1.0;
    col = d_theta(e);
    for (int i = 0; i < m; ++i) D[i * m + j] = col.values[i];
  }
  std::vector<double> M(m * m, 0.0);
  for (int i = 0; i < m; ++i) M[i * m + i] = g.weight(i);
  for (int k = 0; k < m; ++k) {
    double w = g.weight(k);
    for (int i = 0; i < m; ++i) {
      double dki = D[k * m + i];
      if (dki == 0.0) continue;
      for (int j = 0; j < m; ++j) M[i * m + j] += w * dki * D[k * m + j];
    }
  }
  return Cholesky(M, m);
}

}  // namespace detail

struct SelectionGradient {
  ScalarField smooth;       // ∇(P − (1/k)μ²₀ + |b̃|²)
  ScalarField volume;       // ∇|F|
  double volume_gap = 0;    // |F| − v₀
  double value = 0;         // full functional value
};

// Functional value of F_k / G_k.
inline double selection_value(const SelectionProblem& prob, const RadialGraph& f) {
  double val = perimeter_lambda(f, prob.p) +
               prob.Lambda * std::abs(graph_volume(f) - prob.target_volume) -
               mu0_sq(f, prob.p) / prob.k;
  if (prob.include_btilde) {
    Vec bt = b_tilde_shifted(f, Vec(prob.p.n));
    val += bt.norm2();
  }
  return val;
}

// Analytic gradient with respect to the nodal radial values.  The λ-dependent
// integrands are closed-form in (f, ∂f), so the chain rule reduces to the
// transpose of the finite-difference operator.
inline SelectionGradient selection_gradient(const SelectionProblem& prob,
                                            const RadialGraph& f) {
  const AngularGrid& g = *prob.grid;
  const int n = g.n;
  const double lam = prob.p.lambda;
  std::vector<double> cp, sp;
  detail::polar_cs(g, cp, sp);
  ScalarField df = d_theta(f.field);
  ScalarField part_f(g), part_g(g);  // ∂ integrand / ∂f, ∂ integrand / ∂(∂f)
  SelectionGradient out{ScalarField(g), ScalarField(g)};
  double value = 0, volume = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    int j = g.theta_index(node);
    double fv = f[node], gv = df.values[node];
    double c = cp[j], s = sp[j];
    double w = g.weight(node);
    double root = std::sqrt(fv * fv + gv * gv);
    double fn2 = std::pow(fv, n - 2), fn3 = n >= 3 ? std::pow(fv, n - 3) : 0.0;
    // Perimeter integrand: f^{n−2}(root − λ(f c + g s)).
    double per = fn2 * (root - lam * (fv * c + gv * s));
    double per_f = (n - 2) * fn3 * (root - lam * (fv * c + gv * s)) +
                   fn2 * (fv / root - lam * c);
    double per_g = fn2 * (gv / root - lam * s);
    // μ²₀ integrand: f^{n−2}(root − (f² + λ f c + λ g s)/R), R = |f x + λe_n|.
    double R = std::sqrt(fv * fv + 2.0 * lam * fv * c + lam * lam);
    double num = fv * fv + lam * fv * c + lam * gv * s;
    double mu = fn2 * (root - num / R);
    double dR_df = (fv + lam * c) / R;
    double mu_f = (n - 2) * fn3 * (root - num / R) +
                  fn2 * (fv / root - (2.0 * fv + lam * c) / R +
                         num * dR_df / (R * R));
    double mu_g = fn2 * (gv / root - lam * s / R);
    value += w * (per - mu / prob.k);
    part_f.values[node] = w * (per_f - mu_f / prob.k);
    part_g.values[node] = w * (per_g - mu_g / prob.k);
    volume += w * std::pow(fv, n) / n;
    out.volume.values[node] = w * std::pow(fv, n - 1);
  }
  ScalarField chain = d_theta_transpose(part_g);
  for (int node = 0; node < g.node_count(); ++node)
    out.smooth.values[node] = part_f.values[node] + chain.values[node];
  if (prob.include_btilde) {
    double b1 = 0;
    for (int node = 0; node < g.node_count(); ++node)
      b1 += g.weight(node) * detail::clamped_moment(sp[g.theta_index(node)], 0.0,
                                                    f[node], n);
    value += b1 * b1;
    for (int node = 0; node < g.node_count(); ++node) {
      double q = sp[g.theta_index(node)];
      out.smooth.values[node] += 2.0 * b1 * g.weight(node) *
                                 psi_clamp(q * f[node]) *
                                 std::pow(f[node], n - 1);
    }
  }
  out.volume_gap = volume - prob.target_volume;
  value += prob.Lambda * std::abs(out.volume_gap);
  out.value = value;
  return out;
}

// Minimal-norm element of the subdifferential: the volume multiplier β is
// chosen in [−Λ, Λ] (free at |F| = v₀, pinned to ±Λ otherwise) to minimize
// the residual norm; the bubble is stationary under this convention.
inline double stationarity_norm(const SelectionProblem& prob,
                                const SelectionGradient& grad,
                                double gap_tol = 1e-12) {
  double beta;
  if (std::abs(grad.volume_gap) > gap_tol) {
    // Full gradient is smooth + Λ sgn(gap) ∇V, i.e. residual with β = −Λ sgn.
    beta = -prob.Lambda * (grad.volume_gap > 0 ? 1.0 : -1.0);
  } else {
    double num = 0, den = 0;
    for (int i = 0; i < grad.smooth.size(); ++i) {
      num += grad.smooth.values[i] * grad.volume.values[i];
      den += grad.volume.values[i] * grad.volume.values[i];
    }
    beta = den > 0 ? std::clamp(num / den, -prob.Lambda, prob.Lambda) : 0.0;
  }
  double s = 0;
  for (int i = 0; i < grad.smooth.size(); ++i) {
    double r = grad.smooth.values[i] - beta * grad.volume.values[i];
    s += r * r;
  }
  return std::sqrt(s);
}

struct SelectionTrace {
  std::vector<double> values;
  double final_stationarity = 0;
  double sym_diff_to_reference = 0;
  double volume_gap = 0;
  double b_tilde_norm = 0;
  bool line_search_failed = false;
  bool converged = false;
};

// Subgradient descent with Armijo backtracking; positivity enforced by step
// shrinking.  Near the volume constraint the direction uses the minimal-norm
// multiplier so iterates can slide along the nonsmooth manifold.
inline std::pair<RadialGraph, SelectionTrace> minimize_selection(
    const SelectionProblem& prob, const RadialGraph& init,
    const SelectionConfig& cfg) {
  const AngularGrid& g = *prob.grid;
  RadialGraph f = init;
  SelectionTrace trace;
  double gap_tol = 1e-10 * (1.0 + prob.target_volume);
  Cholesky precond = detail::h1_preconditioner(g);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    SelectionGradient grad = selection_gradient(prob, f);
    trace.values.push_back(grad.value);
    double stat = stationarity_norm(prob, grad, gap_tol);
    trace.final_stationarity = stat;
    if (stat <= cfg.grad_tol * (1.0 + std::abs(grad.value))) {
      trace.converged = true;
      break;
    }
    // Active subgradient, then an H¹-preconditioned descent direction.  On
    // the constraint manifold the multiplier is minimal-norm in the M⁻¹
    // metric of the preconditioner, so the direction −M⁻¹(g − βv) is tangent
    // to the volume constraint and the Λ|gap| penalty stays second order.
    double beta;
    if (std::abs(grad.volume_gap) > gap_tol) {
      beta = -prob.Lambda * (grad.volume_gap > 0 ? 1.0 : -1.0);
    } else {
      std::vector<double> zv = precond.solve(grad.volume.values);
      double num = 0, den = 0;
      for (int i = 0; i < grad.smooth.size(); ++i) {
        num += zv[i] * grad.smooth.values[i];
        den += zv[i] * grad.volume.values[i];
      }
      beta = den > 0 ? std::clamp(num / den, -prob.Lambda, prob.Lambda) : 0.0;
    }
    std::vector<double> active(g.node_count());
    for (int i = 0; i < g.node_count(); ++i)
      active[i] = grad.smooth.values[i] - beta * grad.volume.values[i];
    std::vector<double> dir = precond.solve(active);
    double slope = 0;  // ⟨g, d⟩ with d = −M⁻¹g
    for (int i = 0; i < g.node_count(); ++i) {
      dir[i] = -dir[i];
      slope += active[i] * dir[i];
    }
    double step = cfg.init_step;
    bool accepted = false;
    while (step > 1e-14) {
      ScalarField trial = f.field;
      bool positive = true;
      for (int i = 0; i < trial.size(); ++i) {
        trial.values[i] += step * dir[i];
        if (!(trial.values[i] > 0)) positive = false;
      }
      if (positive) {
        RadialGraph candidate(trial);
        double trial_value = selection_value(prob, candidate);
        if (trial_value <= grad.value + cfg.armijo_c * step * slope) {
          f = candidate;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      trace.line_search_failed = true;
      break;
    }
  }
  RadialGraph bubble = w_profile(prob.p, g);
  trace.sym_diff_to_reference = 0;
  for (int node = 0; node < g.node_count(); ++node)
    trace.sym_diff_to_reference +=
        g.weight(node) *
        std::abs(std::pow(f[node], g.n) - std::pow(bubble[node], g.n)) / g.n;
  trace.volume_gap = std::abs(graph_volume(f) - prob.target_volume);
  if (prob.include_btilde)
    trace.b_tilde_norm = b_tilde_shifted(f, Vec(prob.p.n)).norm();
  return {std::move(f), std::move(trace)};
}

// Standard three-start minimization; returns the best final value.
inline std::pair<RadialGraph, SelectionTrace> minimize_multistart(
    const SelectionProblem& prob, const SelectionConfig& cfg) {
  const AngularGrid& g = *prob.grid;
  RadialGraph w = w_profile(prob.p, g);
  std::vector<RadialGraph> inits;
  inits.push_back(w);
  for (auto [mode, amp] : {std::pair<int, double>{1, 0.1}, {2, 0.05}}) {
    ScalarField v = w.field;
    for (int node = 0; node < g.node_count(); ++node) {
      double t = g.theta[g.theta_index(node)];
      v.values[node] *= 1.0 + amp * std::cos(mode * kPi * t / g.theta_end);
    }
    inits.push_back(RadialGraph(std::move(v)));
  }
  std::pair<RadialGraph, SelectionTrace> best = minimize_selection(prob, inits[0], cfg);
  for (std::size_t i = 1; i < inits.size(); ++i) {
    auto run = minimize_selection(prob, inits[i], cfg);
    if (run.second.values.back() < best.second.values.back()) best = std::move(run);
  }
  return best;
}

// FD cross-check of the analytic gradient: max relative error of directional
// derivatives over random probe directions.
inline double gradient_fd_error(const SelectionProblem& prob, const RadialGraph& f,
                                Rng& rng, int trials = 20) {
  const AngularGrid& g = *prob.grid;
  SelectionGradient grad = selection_gradient(prob, f);
  double worst = 0;
  for (int trial = 0; trial < trials; ++trial) {
    ScalarField d = random_perturbation(g, rng, 1.0);
    double analytic = 0;
    for (int i = 0; i < d.size(); ++i)
      analytic += (grad.smooth.values[i] +
                   prob.Lambda * ((grad.volume_gap > 0) - (grad.volume_gap < 0)) *
                       grad.volume.values[i]) *
                  d.values[i];
    double eps = 1e-6;
    auto shifted = [&](double sgn) {
      ScalarField v = f.field;
      for (int i = 0; i < v.size(); ++i) v.values[i] += sgn * eps * d.values[i];
      return selection_value(prob, RadialGraph(std::move(v)));
    };
    double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * eps);
    double scale = std::max({std::abs(analytic), std::abs(fd), 1e-8});
    worst = std::max(worst, std::abs(analytic - fd) / scale);
  }
  return worst;
}

struct SelectionSweep {
  std::vector<int> k_values;
  std::vector<double> sym_diffs;
  std::vector<double> volume_gaps;
  FitResult fit;
  bool degenerate = false;  // all symmetric differences at the numerical floor
};

inline SelectionSweep selection_sweep(const std::vector<int>& k_list,
                                      const CapParams& p, const AngularGrid& g,
                                      SelectionConfig cfg,
                                      double floor = 1e-6) {
  SelectionSweep out;
  std::vector<std::pair<double, double>> pts;
  for (int k : k_list) {
    cfg.k = k;
    SelectionProblem prob(p, g, cfg);
    auto [f, trace] = minimize_multistart(prob, cfg);
    out.k_values.push_back(k);
    out.sym_diffs.push_back(trace.sym_diff_to_reference);
    out.volume_gaps.push_back(trace.volume_gap);
    pts.push_back({static_cast<double>(k),
                   trace.sym_diff_to_reference > floor ? trace.sym_diff_to_reference
                                                       : 0.0});
  }
  out.fit = loglog_fit(pts);
  out.degenerate = out.fit.degenerate;
  return out;
}

}  // namespace capiso
