#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "capiso/grid.hpp"

namespace capiso {

// Positive radial field f over an AngularGrid; represents the star-shaped set
// { r x : 0 < r < f(x) } whose free boundary is the graph { f(x) x }.
struct RadialGraph {
  ScalarField field;

  explicit RadialGraph(ScalarField f) : field(std::move(f)) {
    for (double v : field.values)
      if (!(v > 0.0))
        throw std::invalid_argument("RadialGraph: radial function must be positive");
  }
  const AngularGrid& grid() const { return *field.grid; }
  double operator[](int node) const { return field.values[node]; }
};

// Radial profile of the bubble: the unit ball centered at -lambda e_n cut by
// the upper half-space, parametrized over the cap.  Solves |w x + lambda e_n| = 1.
inline RadialGraph w_profile(const CapParams& params, const AngularGrid& grid) {
  if (grid.n != params.n)
    throw std::invalid_argument("w_profile: grid dimension mismatch");
  ScalarField w(grid);
  for (int node = 0; node < grid.node_count(); ++node) {
    int j = grid.theta_index(node);
    double c = grid.cos_polar(j), s = grid.sin_polar(j);
    w.values[node] =
        -params.lambda * c + std::sqrt(1.0 - params.lambda * params.lambda * s * s);
  }
  return RadialGraph(std::move(w));
}

inline RadialGraph scaled(const RadialGraph& f, double s) {
  if (!(s > 0)) throw std::invalid_argument("scaled: factor must be positive");
  ScalarField g = f.field;
  for (double& v : g.values) v *= s;
  return RadialGraph(std::move(g));
}

// |E| = (1/n) ∫ f^n dσ.
inline double graph_volume(const RadialGraph& f) {
  const AngularGrid& g = f.grid();
  double s = 0;
  for (int node = 0; node < g.node_count(); ++node)
    s += g.weight(node) * std::pow(f[node], g.n);
  return s / g.n;
}

// Per-node boundary data of the graph map F(x) = f(x) x.
struct SurfaceGeometry {
  const RadialGraph* f = nullptr;
  GradientComponents grad;          // tangential gradient components of f
  std::vector<double> grad_norm;    // |∇f|
  std::vector<double> area;         // tangential Jacobian f^{n-2}√(f²+|∇f|²)
  std::vector<Vec> normal;          // outer unit normal at f(x) x
  std::vector<Vec> position;        // f(x) x
};

inline SurfaceGeometry surface_geometry(const RadialGraph& f) {
  const AngularGrid& g = f.grid();
  SurfaceGeometry out;
  out.f = &f;
  out.grad = gradient_components(f.field);
  int N = g.node_count();
  out.grad_norm.resize(N);
  out.area.resize(N);
  out.normal.resize(N, Vec(g.n));
  out.position.resize(N, Vec(g.n));
  for (int node = 0; node < N; ++node) {
    double fv = f[node];
    double gt = out.grad.g_theta.values[node];
    double gp = out.grad.g_phi.values[node];
    double gn = std::hypot(gt, gp);
    out.grad_norm[node] = gn;
    double root = std::sqrt(fv * fv + gn * gn);
    out.area[node] = std::pow(fv, g.n - 2) * root;
    Vec x = g.direction(node);
    Vec grad_vec = gt * g.tau_theta(node);
    if (g.azimuth_count > 0) grad_vec += gp * g.tau_phi(node);
    out.normal[node] = (1.0 / root) * (fv * x - grad_vec);
    out.position[node] = fv * x;
  }
  return out;
}

// Tangential Jacobian J = f^{n-1}√(1 + |∇f|²/f²) per node.
inline ScalarField area_element(const RadialGraph& f) {
  SurfaceGeometry sg = surface_geometry(f);
  ScalarField out(f.grid());
  out.values.assign(sg.area.begin(), sg.area.end());
  return out;
}

// Outer unit normal ν(f(x) x) = (f x − ∇f) / √(f² + |∇f|²) at one node.
inline Vec unit_normal(const RadialGraph& f, int node) {
  return surface_geometry(f).normal[node];
}

struct SurfacePoint {
  Vec position;
  Vec normal;
  double area_element;
};

inline SurfacePoint surface_point(const RadialGraph& f, int node) {
  SurfaceGeometry sg = surface_geometry(f);
  return SurfacePoint{sg.position[node], sg.normal[node], sg.area[node]};
}

// Discrete sup norms of f − g and of its tangential gradient.
inline std::pair<double, double> graph_distance(const RadialGraph& f,
                                                const RadialGraph& g) {
  require_same_grid(f.field, g.field);
  ScalarField diff = f.field;
  for (int i = 0; i < diff.size(); ++i) diff.values[i] -= g.field.values[i];
  double sup0 = 0;
  for (double v : diff.values) sup0 = std::max(sup0, std::abs(v));
  ScalarField grad = tangential_gradient(*f.field.grid, diff);
  double sup1 = 0;
  for (double v : grad.values) sup1 = std::max(sup1, std::abs(v));
  return {sup0, sup1};
}

}  // namespace capiso
