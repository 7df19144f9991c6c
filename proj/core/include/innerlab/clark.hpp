#pragma once

#include <functional>
#include <string>
#include <vector>

#include "innerlab/boundary_function.hpp"
#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

struct AtomicMeasureOnCircle {
  std::vector<CirclePoint> points;
  std::vector<double> masses;
  double tail_mass = 0.0;

  std::size_t size() const noexcept { return points.size(); }
  double atom_mass() const noexcept;
  double total() const noexcept { return atom_mass() + tail_mass; }
  /// sum g(angle_k) m_k
  double integrate(const std::function<double(double)>& g) const;
};

/// (1 - |z|^2) / |zeta - z|^2
double poisson_kernel(Complex z, Complex zeta) noexcept;

/// Total mass of the Clark measure: P(f(0), alpha); 1 when f(0) = 0.
double expected_clark_mass(const InnerFunction& f, Complex alpha);

/// Atoms at the solutions of f = alpha with masses 1/|f'|.
AtomicMeasureOnCircle clark_measure(const InnerFunction& f, Complex alpha, double tail_tol = 1e-8);

struct ClarkIntegral {
  double value;
  double tail_bound;  // sup|g| * unenumerated mass
};

/// integral of g against mu_alpha without materializing the atoms.
ClarkIntegral integrate_clark(const InnerFunction& f, double alpha_angle,
                              const std::function<double(double)>& g, double sup_g,
                              double tail_tol = 1e-8);

/// | P(f(z), alpha) - sum_k P(z, zeta_k) m_k |
double poisson_identity_residual(const InnerFunction& f, Complex alpha, Complex z,
                                 double tail_tol = 1e-8);

/// (P g)(t) = integral of g against mu_{f(e^{it})}, on the grid of g.  g must
/// live on the full circle.
BoundaryFunction project(const InnerFunction& f, const BoundaryFunction& g, double tail_tol = 1e-8);

/// Pointwise form of the projection for a callable g.
std::function<double(double)> projection(const InnerFunction& f, std::function<double(double)> g,
                                         double sup_g, double tail_tol = 1e-8);

struct DisintegrationResult {
  double residual;          // |lhs - rhs|
  double lhs;               // (1/2pi) int int g dmu_alpha dalpha
  double rhs;               // (1/2pi) int g
  double quadrature_error;  // |lhs(n) - lhs(n/2)|
};

/// Aleksandrov disintegration check with a half-cell shifted alpha grid.
DisintegrationResult disintegration_residual(const InnerFunction& f,
                                             const std::function<double(double)>& g,
                                             std::size_t quadrature_size, double tail_tol = 1e-8);

/// rows: alpha_angle,atom_angle,mass,tail
std::string clark_csv(const InnerFunction& f, const std::vector<double>& alpha_angles,
                      double tail_tol);

}  // namespace innerlab
