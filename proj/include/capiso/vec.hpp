#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace capiso {

// Small fixed-capacity vector for ambient-space points and normals (n <= 8).
struct Vec {
  std::array<double, 8> c{};
  int dim = 0;

  Vec() = default;
  explicit Vec(int d) : dim(d) {
    if (d < 1 || d > 8) throw std::invalid_argument("Vec: dimension out of range");
  }
  static Vec zero(int d) { return Vec(d); }

  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim; ++i) c[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator*(Vec a, double s) { return a *= s; }

  friend double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.dim; ++i) s += a.c[i] * b.c[i];
    return s;
  }
  double norm2() const { return dot(*this, *this); }
  double norm() const { return std::sqrt(norm2()); }
  Vec normalized() const {
    double m = norm();
    if (m == 0) throw std::domain_error("Vec: normalizing zero vector");
    Vec r = *this;
    r *= 1.0 / m;
    return r;
  }
};

}  // namespace capiso
