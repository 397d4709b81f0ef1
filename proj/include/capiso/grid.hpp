#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "capiso/params.hpp"
#include "capiso/vec.hpp"

namespace capiso {

// Surface area of the unit d-sphere S^d in R^{d+1}.
inline double unit_sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

// Volume of the unit d-ball.
inline double unit_ball_volume(int d) {
  if (d == 0) return 1.0;
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Quadrature nodes and weights on a spherical-cap cross section.
//
// Axisymmetric layout (azimuth_count == 0): one node per polar angle theta_j,
// uniform spacing, composite Boole weights, per-node measure factor
// |S^{n-2}| sin^{n-2}(theta).  For n == 2 the stored parameter t in
// [0, theta_end] encodes the signed arc angle alpha = t - theta_end/2 from
// the e_2 axis (measure factor 1), so theta_end = pi covers the full
// half-circle and a symmetric sector of half-angle omega has theta_end =
// 2*omega.
//
// Full layout (azimuth_count = M > 0, n == 3 only): nodes (theta_j, phi_m)
// with phi_m = 2*pi*m/M and trapezoidal azimuthal weights; node index is
// j*M + m.
struct AngularGrid {
  int n = 0;
  double theta_end = 0;
  int azimuth_count = 0;
  std::vector<double> theta;          // ordered parameter nodes in [0, theta_end]
  std::vector<double> theta_weights;  // composite Boole weights (include h)
  std::vector<double> measure_weight; // per-theta-node measure factor
  double h = 0;                       // theta spacing

  int theta_count() const { return static_cast<int>(theta.size()); }
  int node_count() const {
    return azimuth_count > 0 ? theta_count() * azimuth_count : theta_count();
  }
  bool axisymmetric() const { return azimuth_count == 0; }

  int theta_index(int node) const {
    return azimuth_count > 0 ? node / azimuth_count : node;
  }
  int phi_index(int node) const {
    return azimuth_count > 0 ? node % azimuth_count : 0;
  }
  double phi(int node) const {
    return azimuth_count > 0 ? 2.0 * kPi * phi_index(node) / azimuth_count : 0.0;
  }
  double phi_weight() const {
    return azimuth_count > 0 ? 2.0 * kPi / azimuth_count : 1.0;
  }

  // Signed angle from the e_n axis (n == 2 only).
  double signed_angle(int j) const { return theta[j] - 0.5 * theta_end; }

  // Cosine/sine of the polar angle from e_n of theta node j.
  double cos_polar(int j) const {
    return n == 2 ? std::cos(signed_angle(j)) : std::cos(theta[j]);
  }
  double sin_polar(int j) const {
    return n == 2 ? std::sin(std::abs(signed_angle(j))) : std::sin(theta[j]);
  }

  // Full quadrature weight of a node (theta, azimuth and measure factors).
  double weight(int node) const {
    return theta_weights[theta_index(node)] * measure_weight[theta_index(node)] *
           phi_weight();
  }

  // Unit direction of a node.
  Vec direction(int node) const {
    Vec x(n);
    int j = theta_index(node);
    if (n == 2) {
      double a = signed_angle(j);
      x[0] = std::sin(a);
      x[1] = std::cos(a);
    } else if (azimuth_count > 0) {
      double st = std::sin(theta[j]), ct = std::cos(theta[j]), p = phi(node);
      x[0] = st * std::cos(p);
      x[1] = st * std::sin(p);
      x[2] = ct;
    } else {
      x[0] = std::sin(theta[j]);
      x[n - 1] = std::cos(theta[j]);
    }
    return x;
  }

  // Unit tangent along increasing theta parameter.
  Vec tau_theta(int node) const {
    Vec t(n);
    int j = theta_index(node);
    if (n == 2) {
      double a = signed_angle(j);
      t[0] = std::cos(a);
      t[1] = -std::sin(a);
    } else if (azimuth_count > 0) {
      double st = std::sin(theta[j]), ct = std::cos(theta[j]), p = phi(node);
      t[0] = ct * std::cos(p);
      t[1] = ct * std::sin(p);
      t[2] = -st;
    } else {
      t[0] = std::cos(theta[j]);
      t[n - 1] = -std::sin(theta[j]);
    }
    return t;
  }

  // Unit tangent along increasing phi (n == 3 full layout only).
  Vec tau_phi(int node) const {
    Vec t(n);
    double p = phi(node);
    t[0] = -std::sin(p);
    t[1] = std::cos(p);
    t[2] = 0;
    return t;
  }
};

inline AngularGrid make_grid(const CapParams& params, double theta_end,
                             int resolution, int azimuth_count = 0) {
  if (resolution < 8)
    throw std::invalid_argument("make_grid: resolution must be >= 8");
  if (resolution % 4 != 0)
    throw std::invalid_argument("make_grid: resolution must be a multiple of 4");
  if (!(theta_end > 0.0 && theta_end <= kPi + 1e-14))
    throw std::invalid_argument("make_grid: theta_end must lie in (0, pi]");
  if (azimuth_count != 0) {
    if (params.n != 3)
      throw std::invalid_argument("make_grid: azimuthal layer requires n == 3");
    if (azimuth_count < 8)
      throw std::invalid_argument("make_grid: azimuth_count must be 0 or >= 8");
  }

  AngularGrid g;
  g.n = params.n;
  g.theta_end = theta_end;
  g.azimuth_count = azimuth_count;
  g.h = theta_end / resolution;
  g.theta.resize(resolution + 1);
  g.theta_weights.resize(resolution + 1);
  g.measure_weight.resize(resolution + 1);
  for (int j = 0; j <= resolution; ++j) g.theta[j] = j * g.h;
  // Composite Boole rule: (2h/45)(7, 32, 12, 32, 14, 32, 12, 32, ..., 7).
  const double base = 2.0 * g.h / 45.0;
  for (int j = 0; j <= resolution; ++j) {
    double c;
    if (j == 0 || j == resolution) c = 7;
    else if (j % 4 == 2) c = 12;
    else if (j % 2 == 1) c = 32;
    else c = 14;
    g.theta_weights[j] = base * c;
  }
  // Ring factor collapses the azimuthal directions on axisymmetric grids;
  // on full layouts the phi weights carry it instead.
  const double ring =
      (params.n >= 3 && azimuth_count == 0) ? unit_sphere_area(params.n - 2) : 1.0;
  for (int j = 0; j <= resolution; ++j) {
    g.measure_weight[j] =
        params.n == 2 ? 1.0 : ring * std::pow(std::sin(g.theta[j]), params.n - 2);
  }
  return g;
}

// Real scalar field sampled at the grid nodes.
struct ScalarField {
  const AngularGrid* grid = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const AngularGrid& g, double fill = 0.0)
      : grid(&g), values(g.node_count(), fill) {}
  ScalarField(const AngularGrid& g, std::vector<double> v)
      : grid(&g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.node_count())
      throw std::invalid_argument("ScalarField: value count does not match grid");
  }
  static ScalarField sampled(const AngularGrid& g,
                             const std::function<double(double)>& f_of_theta) {
    ScalarField u(g);
    for (int node = 0; node < g.node_count(); ++node)
      u.values[node] = f_of_theta(g.theta[g.theta_index(node)]);
    return u;
  }

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  int size() const { return static_cast<int>(values.size()); }
};

inline void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("scalar fields live on different grids");
}

// ---- integration -----------------------------------------------------------

// Integral of g over the cap cross section against the surface measure.
inline double integrate_surface(const AngularGrid& grid, const ScalarField& g) {
  if (g.grid != &grid)
    throw std::invalid_argument("integrate_surface: grid mismatch");
  double s = 0;
  for (int node = 0; node < grid.node_count(); ++node)
    s += grid.weight(node) * g.values[node];
  return s;
}

inline double cap_cross_section_area(const AngularGrid& grid) {
  double s = 0;
  for (int node = 0; node < grid.node_count(); ++node) s += grid.weight(node);
  return s;
}

// ---- finite differences ----------------------------------------------------

// 4th-order stencils on the uniform theta grid, one-sided closures at the ends.
namespace detail {

inline void dtheta_line(const double* f, double* out, int m, double h) {
  if (m < 5) throw std::invalid_argument("tangential derivative needs >= 5 theta nodes");
  const double s = 1.0 / (12.0 * h);
  out[0] = s * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]);
  out[1] = s * (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]);
  for (int j = 2; j <= m - 3; ++j)
    out[j] = s * (f[j - 2] - 8 * f[j - 1] + 8 * f[j + 1] - f[j + 2]);
  out[m - 2] = s * (3 * f[m - 1] + 10 * f[m - 2] - 18 * f[m - 3] + 6 * f[m - 4] - f[m - 5]);
  out[m - 1] = s * (25 * f[m - 1] - 48 * f[m - 2] + 36 * f[m - 3] - 16 * f[m - 4] + 3 * f[m - 5]);
}

// Adjoint of dtheta_line (for analytic gradients of discretized functionals).
inline void dtheta_line_transpose(const double* g, double* out, int m, double h) {
  const double s = 1.0 / (12.0 * h);
  std::fill(out, out + m, 0.0);
  auto add = [&](int j, int i, double c) { out[i] += s * c * g[j]; };
  add(0, 0, -25); add(0, 1, 48); add(0, 2, -36); add(0, 3, 16); add(0, 4, -3);
  add(1, 0, -3); add(1, 1, -10); add(1, 2, 18); add(1, 3, -6); add(1, 4, 1);
  for (int j = 2; j <= m - 3; ++j) {
    add(j, j - 2, 1); add(j, j - 1, -8); add(j, j + 1, 8); add(j, j + 2, -1);
  }
  add(m - 2, m - 1, 3); add(m - 2, m - 2, 10); add(m - 2, m - 3, -18);
  add(m - 2, m - 4, 6); add(m - 2, m - 5, -1);
  add(m - 1, m - 1, 25); add(m - 1, m - 2, -48); add(m - 1, m - 3, 36);
  add(m - 1, m - 4, -16); add(m - 1, m - 5, 3);
}

}  // namespace detail

// Derivative with respect to the theta parameter, per node.
inline ScalarField d_theta(const ScalarField& u) {
  const AngularGrid& g = *u.grid;
  ScalarField out(g);
  int m = g.theta_count();
  if (g.azimuth_count == 0) {
    detail::dtheta_line(u.values.data(), out.values.data(), m, g.h);
  } else {
    int M = g.azimuth_count;
    std::vector<double> col(m), dcol(m);
    for (int p = 0; p < M; ++p) {
      for (int j = 0; j < m; ++j) col[j] = u.values[j * M + p];
      detail::dtheta_line(col.data(), dcol.data(), m, g.h);
      for (int j = 0; j < m; ++j) out.values[j * M + p] = dcol[j];
    }
  }
  return out;
}

// Adjoint of d_theta acting on a cofield.
inline ScalarField d_theta_transpose(const ScalarField& u) {
  const AngularGrid& g = *u.grid;
  ScalarField out(g);
  int m = g.theta_count();
  if (g.azimuth_count == 0) {
    detail::dtheta_line_transpose(u.values.data(), out.values.data(), m, g.h);
  } else {
    int M = g.azimuth_count;
    std::vector<double> col(m), dcol(m);
    for (int p = 0; p < M; ++p) {
      for (int j = 0; j < m; ++j) col[j] = u.values[j * M + p];
      detail::dtheta_line_transpose(col.data(), dcol.data(), m, g.h);
      for (int j = 0; j < m; ++j) out.values[j * M + p] = dcol[j];
    }
  }
  return out;
}

// Periodic 4th-order derivative in phi (full n == 3 layout only).
inline ScalarField d_phi(const ScalarField& u) {
  const AngularGrid& g = *u.grid;
  if (g.azimuth_count == 0)
    throw std::invalid_argument("d_phi: grid has no azimuthal layer");
  ScalarField out(g);
  int m = g.theta_count(), M = g.azimuth_count;
  double hp = 2.0 * kPi / M;
  const double s = 1.0 / (12.0 * hp);
  for (int j = 0; j < m; ++j) {
    const double* f = u.values.data() + j * M;
    double* o = out.values.data() + j * M;
    for (int p = 0; p < M; ++p) {
      int pm2 = (p + M - 2) % M, pm1 = (p + M - 1) % M;
      int pp1 = (p + 1) % M, pp2 = (p + 2) % M;
      o[p] = s * (f[pm2] - 8 * f[pm1] + 8 * f[pp1] - f[pp2]);
    }
  }
  return out;
}

// Components of the tangential gradient: (d/dtheta, (1/sin theta) d/dphi).
// The azimuthal component is zero on axisymmetric grids and at the pole.
struct GradientComponents {
  ScalarField g_theta;
  ScalarField g_phi;  // already divided by sin(theta)
};

inline GradientComponents gradient_components(const ScalarField& u) {
  const AngularGrid& g = *u.grid;
  GradientComponents out{d_theta(u), ScalarField(g)};
  if (g.azimuth_count > 0) {
    ScalarField dp = d_phi(u);
    for (int node = 0; node < g.node_count(); ++node) {
      double st = std::sin(g.theta[g.theta_index(node)]);
      out.g_phi.values[node] = st > 1e-14 ? dp.values[node] / st : 0.0;
    }
  }
  return out;
}

// Pointwise norm of the tangential gradient.
inline ScalarField tangential_gradient(const AngularGrid& grid, const ScalarField& u) {
  if (u.grid != &grid)
    throw std::invalid_argument("tangential_gradient: grid mismatch");
  GradientComponents gc = gradient_components(u);
  ScalarField out(grid);
  for (int node = 0; node < grid.node_count(); ++node)
    out.values[node] = std::hypot(gc.g_theta.values[node], gc.g_phi.values[node]);
  return out;
}

struct SobolevNorms {
  double L1 = 0;
  double L2_sq = 0;
  double H1_sq = 0;
};

inline SobolevNorms sobolev_norms(const AngularGrid& grid, const ScalarField& u) {
  if (u.grid != &grid)
    throw std::invalid_argument("sobolev_norms: grid mismatch");
  ScalarField grad = tangential_gradient(grid, u);
  SobolevNorms out;
  for (int node = 0; node < grid.node_count(); ++node) {
    double w = grid.weight(node), v = u.values[node];
    out.L1 += w * std::abs(v);
    out.L2_sq += w * v * v;
    out.H1_sq += w * grad.values[node] * grad.values[node];
  }
  out.H1_sq += out.L2_sq;
  return out;
}

// ---- off-node evaluation ---------------------------------------------------

namespace detail {

// 6-point Lagrange interpolation on the uniform theta line.
inline double lagrange6(const std::vector<double>& theta, const double* f, int m,
                        double t) {
  int j0 = static_cast<int>(std::floor(t / (theta[1] - theta[0]))) - 2;
  j0 = std::clamp(j0, 0, m - 6);
  double r = 0;
  for (int a = 0; a < 6; ++a) {
    double num = 1, den = 1;
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      num *= t - theta[j0 + b];
      den *= theta[j0 + a] - theta[j0 + b];
    }
    r += f[j0 + a] * num / den;
  }
  return r;
}

}  // namespace detail

// Interpolated field value at arbitrary theta parameter (axisymmetric grids)
// or (theta, phi) (full layout, periodic Lagrange in phi).
inline double field_value_at(const ScalarField& u, double t, double phi = 0.0) {
  const AngularGrid& g = *u.grid;
  int m = g.theta_count();
  if (g.azimuth_count == 0)
    return detail::lagrange6(g.theta, u.values.data(), m, t);
  int M = g.azimuth_count;
  double hp = 2.0 * kPi / M;
  double pn = phi / hp;
  int p0 = static_cast<int>(std::floor(pn)) - 2;
  double col[6];
  std::vector<double> line(m);
  double r = 0;
  for (int a = 0; a < 6; ++a) {
    int p = ((p0 + a) % M + M) % M;
    for (int j = 0; j < m; ++j) line[j] = u.values[j * M + p];
    col[a] = detail::lagrange6(g.theta, line.data(), m, t);
  }
  // Lagrange weights in phi on the 6 consecutive (possibly wrapped) nodes.
  for (int a = 0; a < 6; ++a) {
    double num = 1, den = 1;
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      num *= pn - (p0 + b);
      den *= static_cast<double>(a - b);
    }
    r += col[a] * num / den;
  }
  return r;
}

}  // namespace capiso
