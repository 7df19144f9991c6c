#pragma once

#include <array>

#include "innerlab/circle.hpp"

namespace innerlab {

/// Disk automorphism z -> e^{i rotation} (z - center) / (1 - conj(center) z).
class DiskAutomorphism {
 public:
  DiskAutomorphism() = default;
  explicit DiskAutomorphism(Complex center, double rotation = 0.0);

  static DiskAutomorphism identity() { return {}; }
  /// The automorphism of the disk sending 1, i, -1 to p, q, r (ccw on T).
  static DiskAutomorphism from_three_points(Complex p, Complex q, Complex r);

  Complex center() const noexcept { return center_; }
  double rotation() const noexcept { return rotation_; }
  bool is_identity() const noexcept { return center_ == Complex{} && rotation_ == 0.0; }

  Complex apply(Complex z) const noexcept;
  Complex derivative(Complex z) const noexcept;
  DiskAutomorphism inverse() const;
  /// (*this) o other
  DiskAutomorphism compose(const DiskAutomorphism& other) const;

  /// Continuous lift of arg apply(e^{it}) for all real t.
  double boundary_lift(double t) const noexcept;
  /// |apply'(e^{it})|
  double boundary_derivative(double t) const noexcept;

  /// Coefficients (a, b, c, d) of (a z + b) / (c z + d).
  std::array<Complex, 4> matrix() const noexcept;
  static DiskAutomorphism from_matrix(const std::array<Complex, 4>& m);

 private:
  Complex center_{};
  double rotation_ = 0.0;
};

}  // namespace innerlab
