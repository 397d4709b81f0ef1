#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace capiso {

struct LineMinimum {
  double x = 0;
  double value = 0;
};

// Golden-section minimization on [a, b] to absolute x-tolerance tol.
inline LineMinimum golden_section_min(const std::function<double(double)>& f,
                                      double a, double b, double tol) {
  if (!(b > a)) throw std::invalid_argument("golden_section_min: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double mid = 0.5 * (a + b), fm = f(mid);
  LineMinimum best{mid, fm};
  if (fc < best.value) best = {c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

// Coarse scan followed by golden-section refinement around the best cell.
inline LineMinimum scan_then_refine(const std::function<double(double)>& f,
                                    double a, double b, int coarse, double tol) {
  if (coarse < 3) throw std::invalid_argument("scan_then_refine: need >= 3 samples");
  double best_x = a, best_v = f(a);
  double h = (b - a) / (coarse - 1);
  for (int i = 1; i < coarse; ++i) {
    double x = a + i * h, v = f(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double lo = std::max(a, best_x - h), hi = std::min(b, best_x + h);
  LineMinimum refined = golden_section_min(f, lo, hi, tol);
  if (best_v < refined.value) return {best_x, best_v};
  return refined;
}

}  // namespace capiso
