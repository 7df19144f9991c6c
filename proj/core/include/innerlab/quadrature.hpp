#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace innerlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (cached for common n).
const GaussRule& gauss_legendre(int n);

/// Adaptive Gauss-Legendre (10 vs 2x10 points) on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-13, int max_depth = 48);

/// Midpoint rule with n nodes on [a, b).
template <class F>
double integrate_midpoint(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
  return s * h;
}

}  // namespace innerlab
