#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace capiso {

inline constexpr double kPi = std::numbers::pi;

// Ambient dimension and capillarity parameter; governs every capillarity
// computation. lambda is the adhesion coefficient of the half-space problem.
struct CapParams {
  int n;
  double lambda;

  CapParams(int n_, double lambda_) : n(n_), lambda(lambda_) {
    if (n < 2) throw std::invalid_argument("CapParams: n must be >= 2");
    if (!(std::abs(lambda) < 1.0))
      throw std::invalid_argument("CapParams: lambda must lie in (-1, 1)");
  }
};

// Circular convex cone of half-angle omega about the e_n axis.
// omega = pi/2 designates the half-space case (translation group R^{n-1}).
struct ConeSpec {
  int n;
  double omega;

  ConeSpec(int n_, double omega_) : n(n_), omega(omega_) {
    if (n < 2) throw std::invalid_argument("ConeSpec: n must be >= 2");
    if (!(omega > 0.0 && omega <= kPi / 2 + 1e-15))
      throw std::invalid_argument("ConeSpec: omega must lie in (0, pi/2]");
  }
  bool is_half_space() const { return std::abs(omega - kPi / 2) < 1e-14; }
};

}  // namespace capiso
