#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace capiso {

// Dense Cholesky factorization of a symmetric positive-definite matrix,
// stored row-major; used for the small H¹ preconditioner of the optimizer.
struct Cholesky {
  int n = 0;
  std::vector<double> L;  // lower triangle, row-major n×n

  explicit Cholesky(const std::vector<double>& A, int dim) : n(dim), L(A) {
    if (static_cast<int>(A.size()) != dim * dim)
      throw std::invalid_argument("Cholesky: size mismatch");
    for (int j = 0; j < n; ++j) {
      double d = L[j * n + j];
      for (int k = 0; k < j; ++k) d -= L[j * n + k] * L[j * n + k];
      if (!(d > 0)) throw std::domain_error("Cholesky: matrix not positive definite");
      d = std::sqrt(d);
      L[j * n + j] = d;
      for (int i = j + 1; i < n; ++i) {
        double s = L[i * n + j];
        for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
        L[i * n + j] = s / d;
      }
    }
  }

  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double s = b[i];
      for (int k = 0; k < i; ++k) s -= L[i * n + k] * y[k];
      y[i] = s / L[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < n; ++k) s -= L[k * n + i] * y[k];
      y[i] = s / L[i * n + i];
    }
    return y;
  }
};

}  // namespace capiso
