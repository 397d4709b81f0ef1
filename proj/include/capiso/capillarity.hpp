#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "capiso/graph.hpp"
#include "capiso/search.hpp"

namespace capiso {

// ---- perimeter -------------------------------------------------------------

struct PerimeterValues {
  double p_lambda = 0;  // ∫ (1 − λ⟨e_n, ν⟩) dA
  double p_plain = 0;   // ∫ dA  (relative perimeter in the open half-space)
  double flux_en = 0;   // ∫ ⟨e_n, ν⟩ dA
};

inline PerimeterValues perimeter_values(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  if (g.n != p.n) throw std::invalid_argument("perimeter_values: dimension mismatch");
  SurfaceGeometry sg = surface_geometry(f);
  PerimeterValues out;
  for (int node = 0; node < g.node_count(); ++node) {
    double w = g.weight(node) * sg.area[node];
    out.p_plain += w;
    out.flux_en += w * sg.normal[node][g.n - 1];
  }
  out.p_lambda = out.p_plain - p.lambda * out.flux_en;
  return out;
}

inline double perimeter_lambda(const RadialGraph& f, const CapParams& p) {
  return perimeter_values(f, p).p_lambda;
}

// Quadrature-consistent bubble volume on a given grid.
inline double bubble_volume(const CapParams& p, const AngularGrid& grid) {
  return graph_volume(w_profile(p, grid));
}

// ---- wetted area -----------------------------------------------------------

struct WettedArea {
  double direct = 0;  // from the boundary trace of f
  double flux = 0;    // ∫ ⟨e_n, ν⟩ dA  (must agree by the divergence theorem)
};

inline WettedArea wetted_area(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  WettedArea out;
  out.flux = perimeter_values(f, p).flux_en;
  if (g.n == 2) {
    // Contact points at the two ends of the half-circle parameter range.
    out.direct = f[0] + f[g.theta_count() - 1];
  } else if (g.azimuth_count == 0) {
    double fe = f[g.theta_count() - 1];
    out.direct = unit_ball_volume(g.n - 1) * std::pow(fe, g.n - 1);
  } else {
    // Area enclosed by the boundary curve r(φ) on ∂H.
    int m = g.theta_count(), M = g.azimuth_count;
    double s = 0;
    for (int q = 0; q < M; ++q) {
      double fe = f[(m - 1) * M + q];
      s += 0.5 * fe * fe;
    }
    out.direct = s * g.phi_weight();
  }
  return out;
}

// ---- oscillation asymmetry, fixed center -----------------------------------

// μ²_{λ,0}(E) = ½ ∫ |ν − (y + λe_n)/|y + λe_n||² dA = ∫ (1 − ⟨ν, m⟩) dA.
inline double mu0_sq(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  SurfaceGeometry sg = surface_geometry(f);
  double s = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    Vec m = sg.position[node];
    m[g.n - 1] += p.lambda;
    double mn = m.norm();
    if (mn < 1e-14)
      throw std::domain_error("mu0_sq: surface touches the center of the bubble field");
    s += g.weight(node) * sg.area[node] * (1.0 - dot(sg.normal[node], m) / mn);
  }
  return s;
}

// ---- bulk attraction term ∫_E (n−1)/|x + λe_n| dx --------------------------

namespace detail {

// (n−1) ∫_0^f r^{n−1} / sqrt((r + b)² + d²) dr with b = λ cosθ, d = |λ| sinθ.
// Closed form via r + b = d sinh u; K_j carries the d^j ∫ sinh^j factors.
inline double radial_attraction(double f, double b, double d, int n) {
  if (d < 1e-300) {
    if (b <= 0.0)
      throw std::domain_error("radial_attraction: singular axis direction");
    // (n−1) ∫ r^{n−1}/(r + b) dr by polynomial division.
    double s = 0, pw = 1;  // pw = (−b)^i
    for (int i = 0; i <= n - 2; ++i) {
      s += pw * std::pow(f, n - 1 - i) / (n - 1 - i);
      pw *= -b;
    }
    s += pw * std::log((f + b) / b);
    return (n - 1) * s;
  }
  double S0 = b, S1 = f + b;
  auto K = [&](double S, std::vector<double>& out) {
    out[0] = std::asinh(S / d);
    double root = std::sqrt(S * S + d * d);
    if (n >= 2) out[1] = root;
    for (int j = 2; j <= n - 1; ++j)
      out[j] = std::pow(S, j - 1) * root / j - (j - 1.0) / j * d * d * out[j - 2];
  };
  std::vector<double> k0(n), k1(n);
  K(S0, k0);
  K(S1, k1);
  double s = 0, binom = 1;  // C(n−1, j)
  for (int j = 0; j <= n - 1; ++j) {
    double coeff = binom * std::pow(-b, n - 1 - j);
    s += coeff * (k1[j] - k0[j]);
    binom = binom * (n - 1 - j) / (j + 1);
  }
  return (n - 1) * s;
}

// 16-point Gauss–Legendre on [−1, 1] (positive half; nodes symmetric).
inline constexpr double kGl16X[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr double kGl16W[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

inline double gl16(const std::function<double(double)>& g, double a, double b) {
  double c = 0.5 * (a + b), hw = 0.5 * (b - a), s = 0;
  for (int i = 0; i < 8; ++i) {
    s += kGl16W[i] * (g(c + hw * kGl16X[i]) + g(c - hw * kGl16X[i]));
  }
  return s * hw;
}

// Integrate g over [a, b] with dyadic panels graded toward the endpoint a,
// resolving integrable (log-type) endpoint singularities.
inline double graded_toward(const std::function<double(double)>& g, double a,
                            double b, int levels = 48) {
  double s = 0, len = b - a;
  for (int j = 0; j < levels; ++j) {
    double hi = a + len * std::ldexp(1.0, -j);
    double lo = a + len * std::ldexp(1.0, -j - 1);
    s += gl16(g, lo, hi);
  }
  return s;
}

}  // namespace detail

// ∫_E (n−1)/|x + λe_n| dx for a radial graph E.
inline double bulk_attraction(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  const int n = g.n;
  if (p.lambda == 0.0) {
    double s = 0;
    for (int node = 0; node < g.node_count(); ++node)
      s += g.weight(node) * std::pow(f[node], n - 1);
    return s;
  }
  auto ray = [&](double fv, double c, double sinp) {
    return detail::radial_attraction(fv, p.lambda * c, std::abs(p.lambda) * sinp, n);
  };
  if (p.lambda > 0.0) {
    // λ cosθ ≥ 0 everywhere on the cap: the closed form is regular per node.
    double s = 0;
    for (int node = 0; node < g.node_count(); ++node) {
      int j = g.theta_index(node);
      s += g.weight(node) * ray(f[node], g.cos_polar(j), g.sin_polar(j));
    }
    return s;
  }
  // λ < 0: the attraction center |λ| e_n sits on the axis inside the cap, so
  // the ray integral is log-singular in the axis direction.  Integrate the
  // polar variable with dyadically graded Gauss–Legendre panels toward the
  // axis, interpolating f between nodes.
  const double ring = (n >= 3 && g.azimuth_count == 0) ? unit_sphere_area(n - 2) : 1.0;
  auto polar_of = [&](double t) {
    return n == 2 ? std::abs(t - 0.5 * g.theta_end) : t;
  };
  auto integrate_column = [&](const std::vector<double>& column) {
    std::function<double(double)> integrand = [&](double t) {
      double fv = detail::lagrange6(g.theta, column.data(), g.theta_count(), t);
      double th = polar_of(t);
      double mw = n == 2 ? 1.0 : ring * std::pow(std::sin(th), n - 2);
      return mw * ray(fv, std::cos(th), std::sin(th));
    };
    if (n == 2) {
      // Two half-ranges graded toward the axis direction at the midpoint.
      double mid = 0.5 * g.theta_end;
      auto reflected = [&](double t) { return integrand(2.0 * mid - t); };
      return detail::graded_toward(integrand, mid, g.theta_end) +
             detail::graded_toward(reflected, mid, g.theta_end);
    }
    return detail::graded_toward(integrand, 0.0, g.theta_end);
  };
  if (g.azimuth_count == 0) {
    return integrate_column(f.field.values);
  }
  int m = g.theta_count(), M = g.azimuth_count;
  std::vector<double> column(m);
  double s = 0;
  for (int q = 0; q < M; ++q) {
    for (int j = 0; j < m; ++j) column[j] = f[j * M + q];
    s += integrate_column(column);
  }
  return s * g.phi_weight();
}

// μ²_{λ,0} rewritten by the divergence theorem:
// ∫_{∂E∩H⁺} (1 − ⟨ν, λe_n⟩/|x_h + λe_n|) dA − ∫_E (n−1)/|x + λe_n| dx,
// with x_h the horizontal part of the surface point.
inline double mu0_sq_divergence(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  SurfaceGeometry sg = surface_geometry(f);
  double surf = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    const Vec& y = sg.position[node];
    double hor2 = 0;
    for (int i = 0; i < g.n - 1; ++i) hor2 += y[i] * y[i];
    double denom = std::sqrt(hor2 + p.lambda * p.lambda);
    double coupling = denom < 1e-14
                          ? 0.0
                          : p.lambda * sg.normal[node][g.n - 1] / denom;
    surf += g.weight(node) * sg.area[node] * (1.0 - coupling);
  }
  return surf - bulk_attraction(f, p);
}

// ---- translated bubbles ----------------------------------------------------

// Radial function (from the origin) of s·B^λ + x′, a ball of radius s centered
// at c = x′ − sλe_n intersected with the half-space.  Requires the origin
// strictly inside the ball.
inline double bubble_radial(const CapParams& p, const Vec& x_prime, double s,
                            const Vec& x) {
  Vec c = x_prime;
  c[p.n - 1] -= s * p.lambda;
  double c2 = c.norm2();
  if (!(c2 < s * s))
    throw std::domain_error("bubble_radial: origin outside the translated bubble");
  double xc = dot(x, c);
  return xc + std::sqrt(xc * xc + s * s - c2);
}

namespace detail {

// Visit surface samples (position, normal, area·weight).  Axisymmetric n = 3
// grids are expanded over a uniform azimuthal loop so translated centers can
// be evaluated; n = 2 and full grids are visited node by node.
template <class F>
void for_each_surface_sample(const RadialGraph& f, int m_phi, F&& fn) {
  const AngularGrid& g = f.grid();
  SurfaceGeometry sg = surface_geometry(f);
  if (g.n == 2 || g.azimuth_count > 0) {
    for (int node = 0; node < g.node_count(); ++node)
      fn(sg.position[node], sg.normal[node], g.weight(node) * sg.area[node]);
    return;
  }
  if (g.n != 3)
    throw std::invalid_argument("translated functionals require n in {2, 3}");
  double wphi = 2.0 * kPi / m_phi;
  for (int j = 0; j < g.theta_count(); ++j) {
    double th = g.theta[j], st = std::sin(th), ct = std::cos(th);
    double fv = f[j], df = sg.grad.g_theta.values[j];
    double root = std::sqrt(fv * fv + df * df);
    double nu_rho = (fv * st - df * ct) / root;
    double nu_n = (fv * ct + df * st) / root;
    double jac = fv * root;  // f^{n−2}·root at n = 3
    double wt = g.theta_weights[j] * st * wphi * jac;
    for (int q = 0; q < m_phi; ++q) {
      double ph = wphi * q, cp = std::cos(ph), sp = std::sin(ph);
      Vec y(3), nu(3);
      y[0] = fv * st * cp;
      y[1] = fv * st * sp;
      y[2] = fv * ct;
      nu[0] = nu_rho * cp;
      nu[1] = nu_rho * sp;
      nu[2] = nu_n;
      fn(y, nu, wt);
    }
  }
}

// Visit volume rays (unit direction, radial value, angular weight).
template <class F>
void for_each_volume_ray(const RadialGraph& f, int m_phi, F&& fn) {
  const AngularGrid& g = f.grid();
  if (g.n == 2 || g.azimuth_count > 0) {
    for (int node = 0; node < g.node_count(); ++node)
      fn(g.direction(node), f[node], g.weight(node));
    return;
  }
  if (g.n != 3)
    throw std::invalid_argument("translated functionals require n in {2, 3}");
  double wphi = 2.0 * kPi / m_phi;
  for (int j = 0; j < g.theta_count(); ++j) {
    double th = g.theta[j], st = std::sin(th), ct = std::cos(th);
    double wt = g.theta_weights[j] * st * wphi;
    for (int q = 0; q < m_phi; ++q) {
      double ph = wphi * q;
      Vec x(3);
      x[0] = st * std::cos(ph);
      x[1] = st * std::sin(ph);
      x[2] = ct;
      fn(x, f[j], wt);
    }
  }
}

inline Vec horizontal_offset(int n, double t) {
  Vec v(n);
  v[0] = t;
  return v;
}

}  // namespace detail

// |E Δ (sB^λ + x′)| with x′ = t e₁ on ∂H; both sets are star-shaped about the
// origin, so the symmetric difference reduces to ∫ |fⁿ − gⁿ|/n dσ.
inline double sym_diff_bubble(const RadialGraph& f, const CapParams& p, double t,
                              double s, int m_phi = 64) {
  Vec xp = detail::horizontal_offset(p.n, t);
  double acc = 0;
  const AngularGrid& g = f.grid();
  if (t == 0.0) {
    // Concentric case: azimuth-independent, valid in every dimension.
    for (int node = 0; node < g.node_count(); ++node) {
      double gv = bubble_radial(p, xp, s, g.direction(node));
      acc += g.weight(node) * std::abs(std::pow(f[node], g.n) - std::pow(gv, g.n)) /
             g.n;
    }
    return acc;
  }
  detail::for_each_volume_ray(f, m_phi, [&](const Vec& x, double fv, double w) {
    double gv = bubble_radial(p, xp, s, x);
    acc += w * std::abs(std::pow(fv, p.n) - std::pow(gv, p.n)) / p.n;
  });
  return acc;
}

struct TranslationCandidate {
  double offset = 0;  // signed magnitude along e₁ (n = 2 signed; n = 3 radial)
  double value = 0;
};

// Largest admissible |x′| keeping the origin inside the translated bubble.
inline double translation_validity_radius(const CapParams& p, double s) {
  return s * std::sqrt(1.0 - p.lambda * p.lambda);
}

// Fraenkel asymmetry: inf over x′ of |E Δ (sB^λ + x′)| / |E|, |sB^λ| = |E|.
inline std::pair<double, TranslationCandidate> fraenkel_alpha(
    const RadialGraph& f, const CapParams& p, int m_phi = 64) {
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vb = bubble_volume(p, g);
  double s = std::pow(vol / vb, 1.0 / g.n);
  double fmax = *std::max_element(f.field.values.begin(), f.field.values.end());
  double tmax = std::min(2.0 * (1.0 + fmax),
                         0.999 * translation_validity_radius(p, s));
  auto objective = [&](double t) { return sym_diff_bubble(f, p, t, s, m_phi); };
  double lo = g.n == 2 ? -tmax : 0.0;
  LineMinimum best = scan_then_refine(objective, lo, tmax, 33, 1e-8);
  return {best.value / vol, TranslationCandidate{best.x, best.value / vol}};
}

// Oscillation asymmetry with free center: rescale E to the reference volume,
// then minimize ½∫|ν − (y − x′ + λe_n)/|…||² over x′ ∈ ∂H.
struct MuResult {
  double mu_sq = 0;
  TranslationCandidate argmin;
  double r_E = 1;  // scale factor applied before minimizing
};

inline double mu_objective_at(const RadialGraph& f, const CapParams& p, double t,
                              int m_phi = 64) {
  Vec xp = detail::horizontal_offset(p.n, t);
  double acc = 0;
  detail::for_each_surface_sample(
      f, m_phi, [&](const Vec& y, const Vec& nu, double w) {
        Vec m = y - xp;
        m[p.n - 1] += p.lambda;
        double mn = m.norm();
        if (mn < 1e-14) {
          acc += 2.0 * w;  // worst case ½|ν − m̂|² ≤ 2
          return;
        }
        acc += w * (1.0 - dot(nu, m) / mn);
      });
  return acc;
}

inline MuResult mu_sq(const RadialGraph& f, const CapParams& p, int m_phi = 64) {
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vb = bubble_volume(p, g);
  double r_E = std::pow(vol / vb, 1.0 / g.n);
  RadialGraph rescaled = scaled(f, 1.0 / r_E);
  double tmax = 0.999 * translation_validity_radius(p, 1.0);
  auto objective = [&](double t) { return mu_objective_at(rescaled, p, t, m_phi); };
  double lo = g.n == 2 ? -tmax : 0.0;
  LineMinimum best = scan_then_refine(objective, lo, tmax, 33, 1e-8);
  return {best.value, TranslationCandidate{best.x, best.value}, r_E};
}

// ---- deficit ---------------------------------------------------------------

// D_λ(E) = P_λ(E) / (n |B^λ|^{1/n} |E|^{(n−1)/n}) − 1.
inline double deficit(const RadialGraph& f, const CapParams& p) {
  const AngularGrid& g = f.grid();
  double vol = graph_volume(f);
  double vb = bubble_volume(p, g);
  double iso = g.n * std::pow(vb, 1.0 / g.n) * std::pow(vol, (g.n - 1.0) / g.n);
  return perimeter_lambda(f, p) / iso - 1.0;
}

// ---- barycenters -----------------------------------------------------------

inline double psi_clamp(double t) { return std::clamp(t, -100.0, 100.0); }

namespace detail {

// ∫_0^f ψ(a r + b) r^{n−1} dr with ψ the clamp to [−100, 100]; the argument is
// linear in r, so the clamp introduces at most two breakpoints.
inline double clamped_moment(double a, double b, double f, int n) {
  std::vector<double> cuts{0.0, f};
  if (a != 0.0) {
    for (double level : {-100.0, 100.0}) {
      double r = (level - b) / a;
      if (r > 0.0 && r < f) cuts.push_back(r);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double acc = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double r1 = cuts[i], r2 = cuts[i + 1];
    if (r2 - r1 < 1e-300) continue;
    double vmid = a * 0.5 * (r1 + r2) + b;
    double pn = (std::pow(r2, n) - std::pow(r1, n)) / n;
    if (vmid > 100.0) {
      acc += 100.0 * pn;
    } else if (vmid < -100.0) {
      acc += -100.0 * pn;
    } else {
      acc += a * (std::pow(r2, n + 1) - std::pow(r1, n + 1)) / (n + 1) + b * pn;
    }
  }
  return acc;
}

}  // namespace detail

struct Barycenters {
  Vec bar_H;   // horizontal barycenter (e_n component zero)
  Vec b_tilde; // clamped barycenter integral, horizontal components
};

// b̃(E − z) for a horizontal shift z (z = 0 gives b̃(E)).
inline Vec b_tilde_shifted(const RadialGraph& f, const Vec& z, int m_phi = 64) {
  const AngularGrid& g = f.grid();
  Vec out(g.n);
  if (g.n >= 4 && g.azimuth_count == 0) return out;  // axisymmetric: zero
  if (g.n == 3 && g.azimuth_count == 0 && z.norm2() == 0.0) return out;
  detail::for_each_volume_ray(f, m_phi, [&](const Vec& x, double fv, double w) {
    for (int i = 0; i < g.n - 1; ++i)
      out[i] += w * detail::clamped_moment(x[i], -z[i], fv, g.n);
  });
  return out;
}

inline Barycenters barycenters(const RadialGraph& f, int m_phi = 64) {
  const AngularGrid& g = f.grid();
  Barycenters out{Vec(g.n), Vec(g.n)};
  if (g.azimuth_count == 0 && g.n >= 3) return out;  // axisymmetric: exact zero
  double vol = graph_volume(f);
  detail::for_each_volume_ray(f, m_phi, [&](const Vec& x, double fv, double w) {
    double mom = std::pow(fv, g.n + 1) / (g.n + 1);
    for (int i = 0; i < g.n - 1; ++i) out.bar_H[i] += w * x[i] * mom;
  });
  out.bar_H *= 1.0 / vol;
  out.b_tilde = b_tilde_shifted(f, Vec(g.n), m_phi);
  return out;
}

// Center x* on ∂H with b̃(E − x*) = 0, found by bisection along the b̃ direction.
struct BtildeCenter {
  Vec x_star;
  bool found = false;
};

inline BtildeCenter btilde_center(const RadialGraph& f, int m_phi = 64) {
  const AngularGrid& g = f.grid();
  BtildeCenter out{Vec(g.n), true};
  if (g.azimuth_count == 0 && g.n >= 3) return out;  // axisymmetric: x* = 0
  Vec b0 = b_tilde_shifted(f, Vec(g.n), m_phi);
  double mag = b0.norm();
  if (mag < 1e-14) return out;
  Vec dir = (1.0 / mag) * b0;
  double fmax = *std::max_element(f.field.values.begin(), f.field.values.end());
  auto component = [&](double t) {
    return dot(b_tilde_shifted(f, t * dir, m_phi), dir);
  };
  double lo = -(100.0 + fmax), hi = 100.0 + fmax;
  double flo = component(lo), fhi = component(hi);
  if (!(flo > 0 && fhi < 0)) {
    out.found = false;
    return out;
  }
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (component(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  out.x_star = 0.5 * (lo + hi) * dir;
  return out;
}

// ---- full report -----------------------------------------------------------

struct CapReport {
  double volume = 0;
  double perimeter_lambda = 0;
  double perimeter_plain = 0;
  double wetted_area = 0;
  double wetted_flux = 0;
  double mu0_sq = 0;
  double mu_sq = 0;
  TranslationCandidate mu_argmin;
  double mu_r_E = 1;
  double alpha = 0;
  TranslationCandidate alpha_argmin;
  double deficit = 0;
  Vec barycenter_H;
  Vec b_tilde;
};

inline CapReport cap_report(const RadialGraph& f, const CapParams& p,
                            int m_phi = 64) {
  CapReport r;
  r.barycenter_H = Vec(p.n);
  r.b_tilde = Vec(p.n);
  r.volume = graph_volume(f);
  PerimeterValues pv = perimeter_values(f, p);
  r.perimeter_lambda = pv.p_lambda;
  r.perimeter_plain = pv.p_plain;
  WettedArea wa = wetted_area(f, p);
  r.wetted_area = wa.direct;
  r.wetted_flux = wa.flux;
  r.mu0_sq = mu0_sq(f, p);
  r.deficit = deficit(f, p);
  if (p.n <= 3) {
    MuResult mu = mu_sq(f, p, m_phi);
    r.mu_sq = mu.mu_sq;
    r.mu_argmin = mu.argmin;
    r.mu_r_E = mu.r_E;
    auto [al, cand] = fraenkel_alpha(f, p, m_phi);
    r.alpha = al;
    r.alpha_argmin = cand;
  } else {
    // n ≥ 4: origin-centered quantities only (no translation search).
    double vb = bubble_volume(p, f.grid());
    r.mu_r_E = std::pow(r.volume / vb, 1.0 / p.n);
    r.mu_sq = mu0_sq(scaled(f, 1.0 / r.mu_r_E), p);
    r.alpha = sym_diff_bubble(f, p, 0.0, r.mu_r_E) / r.volume;
  }
  Barycenters bc = barycenters(f, m_phi);
  r.barycenter_H = bc.bar_H;
  r.b_tilde = bc.b_tilde;
  return r;
}

}  // namespace capiso
