#include "innerlab/clark.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/error.hpp"

namespace innerlab {

double AtomicMeasureOnCircle::atom_mass() const noexcept {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

double AtomicMeasureOnCircle::integrate(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) s += g(points[k].angle) * masses[k];
  return s;
}

double poisson_kernel(Complex z, Complex zeta) noexcept {
  return (1.0 - std::norm(z)) / std::norm(zeta - z);
}

double expected_clark_mass(const InnerFunction& f, Complex alpha) {
  return poisson_kernel(f.eval(0.0), alpha);
}

AtomicMeasureOnCircle clark_measure(const InnerFunction& f, Complex alpha, double tail_tol) {
  PreimageSet s = preimages_on_circle(f, alpha, tail_tol);
  AtomicMeasureOnCircle m;
  m.points = std::move(s.points);
  m.masses = std::move(s.masses);
  m.tail_mass = s.tail_mass;
  return m;
}

ClarkIntegral integrate_clark(const InnerFunction& f, double alpha_angle,
                              const std::function<double(double)>& g, double sup_g,
                              double tail_tol) {
  double acc = 0.0;
  PreimageOptions opt;
  opt.tail_tol = tail_tol;
  const double tail =
      visit_preimages(f, alpha_angle, opt, [&](double t, double m) { acc += g(t) * m; });
  return {acc, sup_g * tail};
}

double poisson_identity_residual(const InnerFunction& f, Complex alpha, Complex z,
                                 double tail_tol) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::PreconditionFailed, "z must lie in the open disk");
  double acc = 0.0;
  PreimageOptions opt;
  opt.tail_tol = tail_tol;
  visit_preimages(f, std::arg(alpha), opt,
                  [&](double t, double m) { acc += poisson_kernel(z, std::polar(1.0, t)) * m; });
  return std::abs(poisson_kernel(f.eval(z), alpha) - acc);
}

BoundaryFunction project(const InnerFunction& f, const BoundaryFunction& g, double tail_tol) {
  if (!g.arc().is_full()) throw Error(ErrorCode::PreconditionFailed, "projection needs g on all of T");
  std::vector<double> out(g.size());
  // g evaluated periodically: the arc excludes a single point only
  auto gp = [&](double t) { return g(g.arc().start() + wrap_positive(t - g.arc().start())); };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.node(i);
    out[i] = integrate_clark(f, f.lift(t), gp, g.max_abs(), tail_tol).value;
  }
  return BoundaryFunction(g.arc(), std::move(out));
}

std::function<double(double)> projection(const InnerFunction& f, std::function<double(double)> g,
                                         double sup_g, double tail_tol) {
  return [f, g = std::move(g), sup_g, tail_tol](double t) {
    return integrate_clark(f, f.lift(t), g, sup_g, tail_tol).value;
  };
}

namespace {

double average_over_alpha(const InnerFunction& f, const std::function<double(double)>& g,
                          std::size_t n, double tail_tol) {
  double sup = 0.0;
  for (std::size_t i = 0; i < 256; ++i) sup = std::max(sup, std::abs(g(kTwoPi * i / 256.0)));
  double s = 0.0;
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    // half-cell shift keeps alpha away from structured values such as 1
    s += integrate_clark(f, -kPi + (i + 0.5) * h, g, sup, tail_tol).value;
  }
  return s / static_cast<double>(n);
}

}  // namespace

DisintegrationResult disintegration_residual(const InnerFunction& f,
                                             const std::function<double(double)>& g,
                                             std::size_t quadrature_size, double tail_tol) {
  if (quadrature_size < 2) throw Error(ErrorCode::PreconditionFailed, "quadrature size too small");
  DisintegrationResult r{};
  r.lhs = average_over_alpha(f, g, quadrature_size, tail_tol);
  const double coarse = average_over_alpha(f, g, quadrature_size / 2, tail_tol);
  double s = 0.0;
  const double h = kTwoPi / static_cast<double>(quadrature_size);
  for (std::size_t i = 0; i < quadrature_size; ++i) s += g(-kPi + (i + 0.5) * h);
  r.rhs = s / static_cast<double>(quadrature_size);
  r.residual = std::abs(r.lhs - r.rhs);
  r.quadrature_error = std::abs(r.lhs - coarse);
  return r;
}

std::string clark_csv(const InnerFunction& f, const std::vector<double>& alpha_angles,
                      double tail_tol) {
  std::ostringstream os;
  os << "alpha_angle,atom_angle,mass,tail\n";
  char buf[160];
  for (double a : alpha_angles) {
    const auto m = clark_measure(f, std::polar(1.0, a), tail_tol);
    for (std::size_t k = 0; k < m.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", a, m.points[k].angle,
                    m.masses[k], m.tail_mass);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace innerlab
