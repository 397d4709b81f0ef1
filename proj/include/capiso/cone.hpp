#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "capiso/capillarity.hpp"

namespace capiso {

// Cross-section grid of the cone: polar range [0, ω] for n ≥ 3, the symmetric
// sector of full opening 2ω for n = 2.  ω = π/2 reproduces the half-space cap.
inline AngularGrid cone_grid(const ConeSpec& spec, int resolution,
                             int azimuth_count = 0) {
  CapParams p(spec.n, 0.0);
  double theta_end = spec.n == 2 ? 2.0 * spec.omega : spec.omega;
  return make_grid(p, theta_end, resolution, azimuth_count);
}

// |K_C| = |Σ_C| / n.
inline double K_volume(const ConeSpec& spec) {
  if (spec.n == 2) return spec.omega;
  if (spec.n == 3) return 2.0 * kPi * (1.0 - std::cos(spec.omega)) / 3.0;
  AngularGrid g = cone_grid(spec, 256);
  return cap_cross_section_area(g) / spec.n;
}

// Relative perimeter in the open cone: the lateral contact is free.
inline double perimeter_C(const RadialGraph& f, const ConeSpec& spec) {
  return perimeter_values(f, CapParams(spec.n, 0.0)).p_plain;
}

// μ²_{C,0}(E) = ½ ∫ |ν − x/|x||² dA = ∫ (1 − ⟨ν, x⟩) dA.
inline double mu_C0_sq(const RadialGraph& f, const ConeSpec& spec) {
  const AngularGrid& g = f.grid();
  if (g.n != spec.n) throw std::invalid_argument("mu_C0_sq: dimension mismatch");
  SurfaceGeometry sg = surface_geometry(f);
  double s = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    double fv = f[node], gn = sg.grad_norm[node];
    double root = std::sqrt(fv * fv + gn * gn);
    s += g.weight(node) * sg.area[node] * (1.0 - fv / root);
  }
  return s;
}

// Divergence rewriting: μ²_{C,0}(E) = P_C(E) − ∫_E (n−1)/|x| dx.
inline double mu_C0_sq_divergence(const RadialGraph& f, const ConeSpec& spec) {
  const AngularGrid& g = f.grid();
  double bulk = 0;
  for (int node = 0; node < g.node_count(); ++node)
    bulk += g.weight(node) * std::pow(f[node], g.n - 1);
  return perimeter_C(f, spec) - bulk;
}

// ½ ∫_{Σ_C} (|∇u|² − (n−1)u²) dσ.
inline double cone_fuglede_form(const ScalarField& u, const ConeSpec& spec) {
  const AngularGrid& g = *u.grid;
  if (g.n != spec.n)
    throw std::invalid_argument("cone_fuglede_form: dimension mismatch");
  ScalarField grad = tangential_gradient(g, u);
  double s = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    double uv = u.values[node], gv = grad.values[node];
    s += g.weight(node) * (gv * gv - (g.n - 1) * uv * uv);
  }
  return 0.5 * s;
}

// D_C(E) = P_C(E) / (n |K_C|^{1/n} |E|^{(n−1)/n}) − 1, with the reference
// volume taken quadrature-consistently on the same grid.
inline double deficit_C(const RadialGraph& f, const ConeSpec& spec) {
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vk = cap_cross_section_area(g) / g.n;
  double iso = g.n * std::pow(vk, 1.0 / g.n) * std::pow(vol, (g.n - 1.0) / g.n);
  return perimeter_C(f, spec) / iso - 1.0;
}

// α_C: for ω < π/2 translations are forbidden and the infimum sits at x′ = 0;
// ω = π/2 delegates to the capillarity translation search with λ = 0.
inline std::pair<double, TranslationCandidate> alpha_C(const RadialGraph& f,
                                                       const ConeSpec& spec,
                                                       int m_phi = 64) {
  CapParams p(spec.n, 0.0);
  if (spec.is_half_space()) return fraenkel_alpha(f, p, m_phi);
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vk = cap_cross_section_area(g) / g.n;
  double s = std::pow(vol / vk, 1.0 / g.n);
  double acc = 0;
  for (int node = 0; node < g.node_count(); ++node)
    acc += g.weight(node) *
           std::abs(std::pow(f[node], g.n) - std::pow(s, g.n)) / g.n;
  return {acc / vol, TranslationCandidate{0.0, acc / vol}};
}

// μ²_C: normalization by s_E^{n−1} as in the definition; equivalently the
// fixed-center integral of the rescaled set.
inline MuResult mu_C_sq(const RadialGraph& f, const ConeSpec& spec,
                        int m_phi = 64) {
  CapParams p(spec.n, 0.0);
  if (spec.is_half_space()) return mu_sq(f, p, m_phi);
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vk = cap_cross_section_area(g) / g.n;
  double s_E = std::pow(vol / vk, 1.0 / g.n);
  double value = mu_C0_sq(f, spec) / std::pow(s_E, g.n - 1);
  return MuResult{value, TranslationCandidate{0.0, value}, s_E};
}

struct ConeReport {
  double volume = 0;
  double perimeter_C = 0;
  double mu_C0_sq = 0;
  double mu_C_sq = 0;
  TranslationCandidate mu_argmin;
  double alpha_C = 0;
  TranslationCandidate alpha_argmin;
  double deficit_C = 0;
};

inline ConeReport cone_report(const RadialGraph& f, const ConeSpec& spec,
                              int m_phi = 64) {
  ConeReport r;
  r.volume = graph_volume(f);
  r.perimeter_C = perimeter_C(f, spec);
  r.mu_C0_sq = mu_C0_sq(f, spec);
  MuResult mu = mu_C_sq(f, spec, m_phi);
  r.mu_C_sq = mu.mu_sq;
  r.mu_argmin = mu.argmin;
  auto [al, cand] = alpha_C(f, spec, m_phi);
  r.alpha_C = al;
  r.alpha_argmin = cand;
  r.deficit_C = deficit_C(f, spec);
  return r;
}

}  // namespace capiso
