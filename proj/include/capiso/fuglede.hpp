#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capiso/capillarity.hpp"
#include "capiso/rng.hpp"

namespace capiso {

// ---- log-log fitting -------------------------------------------------------

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  std::vector<std::pair<double, double>> points;  // (s, value), positive
  bool degenerate = false;   // all values at the numerical floor
  int dropped = 0;           // points excluded as below the floor
};

inline FitResult loglog_fit(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::pair<double, double>> kept;
  for (auto& [x, y] : pts) {
    if (!(x > 0)) throw std::invalid_argument("loglog_fit: nonpositive abscissa");
    if (y > 0) kept.push_back({x, y});
  }
  FitResult out;
  out.points = kept;
  out.dropped = static_cast<int>(pts.size() - kept.size());
  if (kept.size() < 5) {
    out.degenerate = true;
    return out;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (auto& [x, y] : kept) {
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  double m = static_cast<double>(kept.size());
  double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-14) {
    out.degenerate = true;
    return out;
  }
  out.slope = (m * sxy - sx * sy) / det;
  out.intercept = (sy * sxx - sx * sxy) / det;
  double ss_res = 0, mean_y = sy / m, ss_tot = 0;
  for (auto& [x, y] : kept) {
    double pred = out.slope * std::log(x) + out.intercept;
    double ly = std::log(y);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  out.r_squared = ss_tot > 0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return out;
}

// ---- second-order perimeter form -------------------------------------------

// Quadratic form of the perimeter expansion at the bubble:
// B(u) = ∫ (1−n)/2 w^{n−2}u²
//      + ½ (w^{2n−4}/|ω^B|) { |∇u|² − ⟨∇w,∇u⟩²/q − 2⟨w∇w, u∇u⟩/q + |∇w|²u²/q },
// q = w² + |∇w|², |ω^B| = w^{n−2}√q.  The bubble gradient is taken with the
// same discrete operator as the perimeter so that the expansion residual
// carries no first-order discretization defect.
inline double B_form(const ScalarField& u, const CapParams& p) {
  const AngularGrid& g = *u.grid;
  if (g.n != p.n) throw std::invalid_argument("B_form: dimension mismatch");
  RadialGraph w = w_profile(p, g);
  GradientComponents gw = gradient_components(w.field);
  GradientComponents gu = gradient_components(u);
  double acc = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    double wv = w[node], uv = u.values[node];
    double dwt = gw.g_theta.values[node], dwp = gw.g_phi.values[node];
    double dut = gu.g_theta.values[node], dup = gu.g_phi.values[node];
    double grad_w2 = dwt * dwt + dwp * dwp;
    double grad_u2 = dut * dut + dup * dup;
    double mixed = dwt * dut + dwp * dup;
    double q = wv * wv + grad_w2;
    double omega_b = std::pow(wv, g.n - 2) * std::sqrt(q);
    double bracket = grad_u2 - mixed * mixed / q - 2.0 * wv * uv * mixed / q +
                     grad_w2 * uv * uv / q;
    double term = 0.5 * (1.0 - g.n) * std::pow(wv, g.n - 2) * uv * uv +
                  0.5 * std::pow(wv, 2 * g.n - 4) / omega_b * bracket;
    acc += g.weight(node) * term;
  }
  return acc;
}

// ---- volume-normalized families --------------------------------------------

// E_t = (|B^λ|/|Ẽ_t|)^{1/n} Ẽ_t with Ẽ_t the graph of w + tφ; the rescale is
// exact by n-homogeneity of the volume.
inline std::pair<RadialGraph, ScalarField> volume_normalized_graph(
    const ScalarField& phi, double t, const CapParams& p) {
  const AngularGrid& g = *phi.grid;
  RadialGraph w = w_profile(p, g);
  ScalarField tilted = w.field;
  for (int i = 0; i < tilted.size(); ++i) tilted.values[i] += t * phi.values[i];
  for (double v : tilted.values)
    if (!(v > 0))
      throw std::domain_error("volume_normalized_graph: nonpositive radial value");
  RadialGraph raw(tilted);
  double c = std::pow(graph_volume(w) / graph_volume(raw), 1.0 / g.n);
  RadialGraph out = scaled(raw, c);
  ScalarField u(g);
  for (int i = 0; i < u.size(); ++i)
    u.values[i] = out.field.values[i] - w.field.values[i];
  return {std::move(out), std::move(u)};
}

// Fit of log |P_λ(E_s) − P_λ(B^λ) − B(u_s)| against log s; the expansion
// predicts slope 3.
inline FitResult expansion_residual_sweep(const ScalarField& phi,
                                          const std::vector<double>& s_list,
                                          const CapParams& p) {
  const AngularGrid& g = *phi.grid;
  RadialGraph w = w_profile(p, g);
  double p_bubble = perimeter_lambda(w, p);
  double floor = 1e-14 * (1.0 + std::abs(p_bubble));
  std::vector<std::pair<double, double>> pts;
  for (double s : s_list) {
    auto [f_s, u_s] = volume_normalized_graph(phi, s, p);
    double residual = std::abs(perimeter_lambda(f_s, p) - p_bubble - B_form(u_s, p));
    pts.push_back({s, residual > floor ? residual : 0.0});
  }
  return loglog_fit(pts);
}

// |V(w+u) − (∫ w^n/n + w^{n−1}u + (n−1)/2 w^{n−2}u²)|.
inline double volume_expansion_residual(const ScalarField& u, const CapParams& p) {
  const AngularGrid& g = *u.grid;
  RadialGraph w = w_profile(p, g);
  ScalarField f(g);
  double predicted = 0;
  for (int i = 0; i < u.size(); ++i) {
    double wv = w[i], uv = u.values[i];
    f.values[i] = wv + uv;
    predicted += g.weight(i) * (std::pow(wv, g.n) / g.n +
                                std::pow(wv, g.n - 1) * uv +
                                0.5 * (g.n - 1) * std::pow(wv, g.n - 2) * uv * uv);
  }
  return std::abs(graph_volume(RadialGraph(f)) - predicted);
}

// ---- random perturbation ensembles -----------------------------------------

// Random smooth field from low-frequency cosine modes in the grid parameter,
// rescaled to a target discrete C¹ norm (sup|u| + sup|∇u|).
inline ScalarField random_perturbation(const AngularGrid& g, Rng& rng,
                                       double c1_target, int modes = 6) {
  ScalarField u(g);
  for (int j = 1; j <= modes; ++j) {
    double a = rng.uniform(-1.0, 1.0) / (j * j);
    for (int node = 0; node < g.node_count(); ++node) {
      double t = g.theta[g.theta_index(node)];
      u.values[node] += a * std::cos(j * kPi * t / g.theta_end);
    }
  }
  double sup0 = 0;
  for (double v : u.values) sup0 = std::max(sup0, std::abs(v));
  ScalarField grad = tangential_gradient(g, u);
  double sup1 = 0;
  for (double v : grad.values) sup1 = std::max(sup1, std::abs(v));
  double norm = sup0 + sup1;
  if (norm < 1e-14) {
    u.values.assign(u.values.size(), 0.0);
    return u;
  }
  double scale = c1_target / norm;
  for (double& v : u.values) v *= scale;
  return u;
}

// ---- chain ratio statistics ------------------------------------------------

struct RatioStats {
  int count = 0;
  double min = 0, median = 0, max = 0;
  int resolution = 0;
  double stability = 0;  // relative change of max under grid doubling
};

namespace detail {

inline RatioStats ratio_stats(std::vector<double> ratios, int resolution) {
  RatioStats out;
  out.resolution = resolution;
  out.count = static_cast<int>(ratios.size());
  if (ratios.empty()) return out;
  std::sort(ratios.begin(), ratios.end());
  out.min = ratios.front();
  out.max = ratios.back();
  out.median = ratios[ratios.size() / 2];
  return out;
}

}  // namespace detail

struct ChainCheck {
  RatioStats mu_over_h1;       // μ²_{λ,0} / ‖u‖²_{H¹}
  RatioStats h1_over_deficit;  // ‖u‖²_{H¹} / (D_λ + |bar_H|²)
};

// Evaluate the two chain ratios over a random volume-normalized ensemble at
// one resolution.  The same (seed, index) streams are used at any resolution,
// so refinement studies compare identical sets.
inline ChainCheck chain_check_at(int ensemble_size, double perturbation_cap,
                                 const CapParams& p, std::uint64_t seed,
                                 int resolution) {
  double theta_end = p.n == 2 ? kPi : kPi / 2;
  AngularGrid g = make_grid(p, theta_end, resolution);
  RadialGraph w = w_profile(p, g);
  std::vector<double> r1, r2;
  for (int item = 0; item < ensemble_size; ++item) {
    Rng rng(seed, item);
    ScalarField phi = random_perturbation(g, rng, perturbation_cap);
    SobolevNorms raw = sobolev_norms(g, phi);
    if (raw.L2_sq < 1e-20) continue;
    auto [f, u] = volume_normalized_graph(phi, 1.0, p);
    SobolevNorms nu = sobolev_norms(g, u);
    if (nu.H1_sq < 1e-20) continue;
    double mu0 = mu0_sq(f, p);
    Barycenters bc = barycenters(f);
    double bar2 = 0;
    for (int i = 0; i < p.n - 1; ++i) bar2 += bc.bar_H[i] * bc.bar_H[i];
    double d = deficit(f, p);
    r1.push_back(mu0 / nu.H1_sq);
    if (d + bar2 > 1e-20) r2.push_back(nu.H1_sq / (d + bar2));
  }
  return {detail::ratio_stats(std::move(r1), resolution),
          detail::ratio_stats(std::move(r2), resolution)};
}

inline ChainCheck chain_check(int ensemble_size, double perturbation_cap,
                              const CapParams& p, std::uint64_t seed,
                              int resolution = 128) {
  ChainCheck coarse = chain_check_at(ensemble_size, perturbation_cap, p, seed,
                                     resolution);
  ChainCheck fine = chain_check_at(ensemble_size, perturbation_cap, p, seed,
                                   2 * resolution);
  auto rel = [](double a, double b) {
    return b != 0 ? std::abs(a - b) / std::abs(b) : 0.0;
  };
  coarse.mu_over_h1.stability = rel(fine.mu_over_h1.max, coarse.mu_over_h1.max);
  coarse.h1_over_deficit.stability =
      rel(fine.h1_over_deficit.max, coarse.h1_over_deficit.max);
  return coarse;
}

// ---- Nash-type ratio table -------------------------------------------------

struct NashEntry {
  double delta = 0;
  double value = 0;  // (∫u² − δ∫|∇u|²) δ^{α_n} / (∫|u|)²
  bool skipped = false;
};

inline std::vector<NashEntry> nash_report(const std::vector<ScalarField>& u_list,
                                          const std::vector<double>& delta_list) {
  std::vector<NashEntry> out;
  for (const ScalarField& u : u_list) {
    const AngularGrid& g = *u.grid;
    double alpha_n = std::max(g.n, 4) / 2.0;
    SobolevNorms norms = sobolev_norms(g, u);
    double grad_sq = norms.H1_sq - norms.L2_sq;
    for (double d : delta_list) {
      if (!(d > 0 && d < 1))
        throw std::invalid_argument("nash_report: delta must lie in (0,1)");
      NashEntry e;
      e.delta = d;
      if (norms.L1 < 1e-14) {
        e.skipped = true;
      } else {
        e.value = (norms.L2_sq - d * grad_sq) * std::pow(d, alpha_n) /
                  (norms.L1 * norms.L1);
      }
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace capiso
