#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "capiso/capillarity.hpp"
#include "capiso/rng.hpp"

namespace capiso {

// Closed-form |B^λ| (spherical cap / circular segment above the cut plane).
inline double cap_volume_exact(int n, double lambda) {
  if (n == 3) return kPi * (1.0 - lambda) * (1.0 - lambda) * (2.0 + lambda) / 3.0;
  if (n == 2) return std::acos(lambda) - lambda * std::sqrt(1.0 - lambda * lambda);
  throw std::invalid_argument("cap_volume_exact: only n in {2, 3}");
}

struct McEstimate {
  double value = 0;
  double standard_error = 0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct BoundingBox {
  Vec lo, hi;
  double volume() const {
    double v = 1;
    for (int i = 0; i < lo.dim; ++i) v *= hi[i] - lo[i];
    return v;
  }
};

// Uniform-sampling volume of { x : inside(x) } ⊂ bbox.
inline McEstimate mc_volume(const std::function<bool(const Vec&)>& inside,
                            const BoundingBox& box, long N, std::uint64_t seed) {
  if (N < 10000) throw std::invalid_argument("mc_volume: need N >= 1e4");
  double bv = box.volume();
  if (!(bv > 0)) throw std::invalid_argument("mc_volume: empty bounding box");
  Rng rng(seed);
  long hits = 0;
  Vec x(box.lo.dim);
  for (long i = 0; i < N; ++i) {
    for (int d = 0; d < x.dim; ++d) x[d] = rng.uniform(box.lo[d], box.hi[d]);
    if (inside(x)) ++hits;
  }
  double p = static_cast<double>(hits) / N;
  McEstimate out;
  out.value = p * bv;
  out.standard_error = std::sqrt(p * (1.0 - p) / N) * bv;
  out.samples = N;
  out.seed = seed;
  return out;
}

// Membership of a point in the star-shaped set of a radial graph.
inline bool point_in_graph_set(const RadialGraph& f, const Vec& x) {
  const AngularGrid& g = f.grid();
  double r = x.norm();
  if (r < 1e-300) return true;
  if (x[g.n - 1] < 0.0) return false;
  double t;
  if (g.n == 2) {
    double alpha = std::atan2(x[0], x[1]);
    t = alpha + 0.5 * g.theta_end;
  } else {
    double hor = 0;
    for (int i = 0; i < g.n - 1; ++i) hor += x[i] * x[i];
    t = std::atan2(std::sqrt(hor), x[g.n - 1]);
  }
  if (t < 0.0 || t > g.theta_end) return false;
  double phi = 0.0;
  if (g.azimuth_count > 0) {
    phi = std::atan2(x[1], x[0]);
    if (phi < 0) phi += 2.0 * kPi;
  }
  return r < field_value_at(f.field, t, phi);
}

// Monte Carlo |E Δ (sB^λ + t e₁)|.
inline McEstimate mc_symdiff(const RadialGraph& f, const CapParams& p, double t,
                             double s, long N, std::uint64_t seed) {
  if (!(s > 0)) throw std::invalid_argument("mc_symdiff: empty bubble");
  const AngularGrid& g = f.grid();
  double fmax = 0;
  for (double v : f.field.values) fmax = std::max(fmax, v);
  double R = std::max(fmax, s + std::abs(t) + std::abs(p.lambda) * s) + 0.1;
  BoundingBox box{Vec(g.n), Vec(g.n)};
  for (int d = 0; d < g.n; ++d) {
    box.lo[d] = d == g.n - 1 ? 0.0 : -R;
    box.hi[d] = R;
  }
  Vec center(g.n);
  center[0] = t;
  center[g.n - 1] = -s * p.lambda;
  auto inside = [&](const Vec& x) {
    bool in_e = point_in_graph_set(f, x);
    bool in_b = (x - center).norm2() < s * s && x[g.n - 1] > 0.0;
    return in_e != in_b;
  };
  return mc_volume(inside, box, N, seed);
}

struct RichardsonResult {
  double value = 0;            // extrapolated
  double error_estimate = 0;   // from the last two levels
  double observed_order = 0;
  bool monotone = true;
};

// Extrapolation from values at (geometrically refined) resolutions.
inline RichardsonResult richardson(const std::function<double(int)>& evaluate,
                                   const std::vector<int>& resolutions) {
  if (resolutions.size() < 3)
    throw std::invalid_argument("richardson: need at least 3 resolutions");
  std::vector<double> v;
  for (int r : resolutions) v.push_back(evaluate(r));
  std::size_t m = v.size();
  double d1 = v[m - 2] - v[m - 3], d2 = v[m - 1] - v[m - 2];
  RichardsonResult out;
  if (std::abs(d2) < 1e-300) {
    out.value = v[m - 1];
    out.error_estimate = 0.0;
    out.observed_order = 0.0;
    out.monotone = true;
    return out;
  }
  if (d1 * d2 <= 0) out.monotone = false;
  double rate = d1 / d2;
  out.observed_order = out.monotone ? std::log2(std::abs(rate)) : 0.0;
  if (out.monotone && rate > 1.0) {
    out.value = v[m - 1] + d2 / (rate - 1.0);
    out.error_estimate = std::abs(d2 / (rate - 1.0));
  } else {
    out.value = v[m - 1];
    out.error_estimate = std::abs(d2);
  }
  return out;
}

}  // namespace capiso
