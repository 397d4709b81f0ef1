#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "capiso/fuglede.hpp"

namespace capiso {

struct BumpSpec {
  double center1 = 0.45, radius1 = 0.40;
  double center2 = 0.80, radius2 = 0.15;
  // Broad primary bump and small sup-norm keep the cubic term of the
  // perimeter expansion visible against the quartic gradient term.
  double amplitude = 0.03;
};

namespace detail {

// C³-smooth compactly supported bump (1 − ((x−a)/r)²)⁴ in x = cos(polar).
inline double bump(double x, double a, double r) {
  double t = (x - a) / r;
  if (std::abs(t) >= 1.0) return 0.0;
  double q = 1.0 - t * t;
  return q * q * q * q;
}

}  // namespace detail

// Direction field φ(x) = f(⟨x, e_n⟩) supported in cosθ ∈ (0,1), corrected so
// that ∫ w^{n−1} φ dσ = 0 exactly (linear solve for the mixing coefficient).
inline ScalarField build_direction(const CapParams& p, const AngularGrid& g,
                                   const BumpSpec& spec = BumpSpec{}) {
  for (double edge : {spec.center1 - spec.radius1, spec.center2 - spec.radius2})
    if (!(edge > 0.0))
      throw std::invalid_argument("build_direction: bump leaves (0,1)");
  for (double edge : {spec.center1 + spec.radius1, spec.center2 + spec.radius2})
    if (!(edge < 1.0))
      throw std::invalid_argument("build_direction: bump leaves (0,1)");
  RadialGraph w = w_profile(p, g);
  ScalarField b1(g), b2(g);
  for (int node = 0; node < g.node_count(); ++node) {
    double c = g.cos_polar(g.theta_index(node));
    b1.values[node] = detail::bump(c, spec.center1, spec.radius1);
    b2.values[node] = detail::bump(c, spec.center2, spec.radius2);
  }
  double m1 = 0, m2 = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    double wn1 = std::pow(w[node], g.n - 1) * g.weight(node);
    m1 += wn1 * b1.values[node];
    m2 += wn1 * b2.values[node];
  }
  if (std::abs(m1) < 1e-14 || std::abs(m2) < 1e-14)
    throw std::invalid_argument("build_direction: degenerate bump moments");
  double c = m1 / m2;
  ScalarField phi(g);
  double sup = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    phi.values[node] = b1.values[node] - c * b2.values[node];
    sup = std::max(sup, std::abs(phi.values[node]));
  }
  // Fixed sup-norm so sweep amplitudes mean the same thing for any bump pair.
  for (double& v : phi.values) v *= spec.amplitude / sup;
  return phi;
}

struct SharpnessSweep {
  std::vector<double> t_values;
  std::vector<double> deficits;
  std::vector<double> mu_sq_values;
  std::vector<double> mu0_sq_values;
  FitResult deficit_fit;
  FitResult mu_fit;
  double ratio_min = 0, ratio_max = 0;  // bracket of D/μ² across the sweep
};

inline SharpnessSweep sharpness_sweep(const CapParams& p, const AngularGrid& g,
                                      const std::vector<double>& t_list,
                                      int m_phi = 64) {
  if (t_list.size() < 6)
    throw std::invalid_argument("sharpness_sweep: need at least 6 t values");
  ScalarField phi = build_direction(p, g);
  SharpnessSweep out;
  std::vector<std::pair<double, double>> dpts, mpts;
  bool first = true;
  for (double t : t_list) {
    auto [f, u] = volume_normalized_graph(phi, t, p);
    double d = deficit(f, p);
    MuResult mu = mu_sq(f, p, m_phi);
    double mu0 = mu0_sq(f, p);
    out.t_values.push_back(t);
    out.deficits.push_back(d);
    out.mu_sq_values.push_back(mu.mu_sq);
    out.mu0_sq_values.push_back(mu0);
    dpts.push_back({t, d > 1e-13 ? d : 0.0});
    mpts.push_back({t, mu.mu_sq > 1e-13 ? mu.mu_sq : 0.0});
    if (d > 1e-13 && mu.mu_sq > 1e-13) {
      double r = d / mu.mu_sq;
      if (first || r < out.ratio_min) out.ratio_min = r;
      if (first || r > out.ratio_max) out.ratio_max = r;
      first = false;
    }
  }
  out.deficit_fit = loglog_fit(dpts);
  out.mu_fit = loglog_fit(mpts);
  return out;
}

struct SymmetricFactorCheck {
  double mu0_sq = 0;
  double mu_sq = 0;
  bool ok = false;
};

// μ²_{λ,0} ≤ 20 μ²_λ for rotationally symmetric volume-normalized sets.
inline SymmetricFactorCheck symmetric_factor_check(const RadialGraph& f,
                                                   const CapParams& p,
                                                   int m_phi = 64) {
  SymmetricFactorCheck out;
  out.mu0_sq = mu0_sq(f, p);
  out.mu_sq = mu_sq(f, p, m_phi).mu_sq;
  out.ok = out.mu0_sq <= 20.0 * out.mu_sq + 1e-8;
  return out;
}

// ⟨(v+w)/|v+w|, v⟩ ≥ ⟨(v+2w)/|v+2w|, v⟩ over random planar pairs; returns the
// count of violations beyond 1e−12.
inline long elementary_inequality_mc(long samples, std::uint64_t seed) {
  Rng rng(seed);
  long violations = 0;
  for (long i = 0; i < samples; ++i) {
    double vx = rng.uniform(-1.0, 1.0), vy = rng.uniform(-1.0, 1.0);
    double wx = rng.uniform(-1.0, 1.0), wy = rng.uniform(-1.0, 1.0);
    double vn = std::hypot(vx, vy), wn = std::hypot(wx, wy);
    if (vn < 1e-6 || wn < 1e-6) continue;  // degenerate draw
    double ax = vx + wx, ay = vy + wy;
    double bx = vx + 2 * wx, by = vy + 2 * wy;
    double an = std::hypot(ax, ay), bn = std::hypot(bx, by);
    if (an < 1e-9 || bn < 1e-9) continue;
    double lhs = (ax * vx + ay * vy) / an;
    double rhs = (bx * vx + by * vy) / bn;
    if (lhs < rhs - 1e-12) ++violations;
  }
  return violations;
}

struct GeometricProbe {
  double empirical_C = 0;
  long samples = 0;
};

// Empirical constant in |v − (w+z)/|w+z||² ≥ |v − w/|w||² − C|z| over random
// (v, w, z) with |v| = 1, |w| ≥ 1/2, |z| ≤ 1/4.
inline GeometricProbe geometric_estimate_probe(long samples, std::uint64_t seed) {
  Rng rng(seed);
  GeometricProbe out;
  out.samples = samples;
  for (long i = 0; i < samples; ++i) {
    // v uniform on S², w uniform in the shell [1/2, 2], z uniform in B_{1/4}.
    Vec v(3), w(3), z(3);
    auto fill_ball = [&](Vec& x, double rmax) {
      for (;;) {
        for (int d = 0; d < 3; ++d) x[d] = rng.uniform(-rmax, rmax);
        if (x.norm2() <= rmax * rmax) return;
      }
    };
    fill_ball(v, 1.0);
    if (v.norm() < 1e-6) continue;
    v = v.normalized();
    for (;;) {
      fill_ball(w, 2.0);
      if (w.norm() >= 0.5) break;
    }
    fill_ball(z, 0.25);
    double zn = z.norm();
    if (zn < 1e-12) continue;
    Vec wz = w + z;
    if (wz.norm() < 1e-12) continue;
    Vec a = v - w.normalized();
    Vec b = v - wz.normalized();
    double gain = (a.norm2() - b.norm2()) / zn;
    if (gain > out.empirical_C) out.empirical_C = gain;
  }
  return out;
}

}  // namespace capiso
