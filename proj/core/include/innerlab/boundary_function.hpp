#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "innerlab/circle.hpp"

namespace innerlab {

class InnerFunction;

/// Real samples at the M midpoints of a uniform grid on an arc, with
/// piecewise linear interpolation.  Evaluates to 0 off the arc.
class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  BoundaryFunction(Arc arc, std::vector<double> samples);

  static BoundaryFunction sample(const Arc& arc, std::size_t m,
                                 const std::function<double(double)>& fn);
  static BoundaryFunction constant(const Arc& arc, std::size_t m, double value);

  const Arc& arc() const noexcept { return arc_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<double>& samples() const noexcept { return samples_; }
  double step() const noexcept { return arc_.length() / static_cast<double>(samples_.size()); }
  /// Unwrapped angle of grid midpoint i.
  double node(std::size_t i) const noexcept { return arc_.start() + (i + 0.5) * step(); }

  double operator()(double t) const noexcept;

  double l1_norm() const noexcept;
  double integral() const noexcept;
  double max_abs() const noexcept;
  /// Exact integral of the interpolant over set (intersected with the arc).
  double integral_over(const ArcSet& set) const;
  /// integral of (*this) * g over the arc, midpoint rule on this grid.
  double pairing(const std::function<double(double)>& g) const;
  /// Closed set where |samples| > tol, padded by one cell.
  ArcSet support(double tol = 0.0) const;

  BoundaryFunction map(const std::function<double(double)>& fn) const;
  BoundaryFunction abs() const;

 private:
  /// Antiderivative of the interpolant from the arc start, at offset s.
  double primitive(double s) const noexcept;

  Arc arc_;
  std::vector<double> samples_;
};

/// Continuous branch of arg f on the arc grid, from cumulative quadrature of
/// the angular derivative starting at the principal value at the arc start.
BoundaryFunction boundary_arg(const InnerFunction& f, const Arc& arc, std::size_t grid_size);

}  // namespace innerlab
