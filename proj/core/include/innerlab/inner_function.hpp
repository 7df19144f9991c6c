#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/mobius.hpp"

namespace innerlab {

inline constexpr std::size_t kInfiniteDegree = std::numeric_limits<std::size_t>::max();

struct SingularAtom {
  double angle;  // location e^{i angle}
  double mass;   // > 0
};

/// Inner function  O o (alpha * B * S)  where B is a finite Blaschke product,
/// S is a singular inner factor with finitely many atoms, alpha = e^{i front}
/// and O is an optional disk automorphism (the form produced by
/// normalize_to_zero).
class InnerFunction {
 public:
  InnerFunction() = default;
  InnerFunction(std::vector<Complex> zeros, std::vector<SingularAtom> atoms,
                double front_angle = 0.0, std::optional<DiskAutomorphism> outer = std::nullopt);

  static InnerFunction blaschke(std::vector<Complex> zeros, double front_angle = 0.0);
  static InnerFunction monomial(int d);
  static InnerFunction single_atom(double angle, double mass, double front_angle = 0.0);

  const std::vector<Complex>& zeros() const noexcept { return zeros_; }
  const std::vector<SingularAtom>& atoms() const noexcept { return atoms_; }
  double front_angle() const noexcept { return front_; }
  const std::optional<DiskAutomorphism>& outer() const noexcept { return outer_; }

  bool is_finite_blaschke() const noexcept { return atoms_.empty(); }
  /// Number of zeros, or kInfiniteDegree when a singular factor is present.
  std::size_t degree() const noexcept;

  Complex eval(Complex z) const;
  Complex boundary_value(double t) const;
  /// Continuous branch of arg f(e^{it}); jumps only across atoms.
  double lift(double t) const;
  /// |f'(e^{it})|, the derivative of the lift.
  double angular_derivative(double t) const;

  /// Lift and derivative of the factor alpha*B*S alone (outer map ignored);
  /// no singularity check.
  double base_lift(double t) const noexcept;
  double base_derivative(double t) const noexcept;
  /// Base lift and derivative at t = atoms()[k].angle + delta + 2pi*wraps,
  /// with the atom's own term evaluated from delta directly.
  double base_lift_offset(std::size_t k, double delta, double t) const noexcept;
  double base_derivative_offset(std::size_t k, double delta, double t) const noexcept;
  /// Base-factor angle whose image under the outer map is e^{i angle}.
  double base_target(double angle) const noexcept;
  /// |O'(e^{i beta})| for a base angle beta (1 without an outer map).
  double outer_factor(double beta) const noexcept;

  /// Smallest angular distance from t to a singular atom (infinity if none).
  double distance_to_singular(double t) const noexcept;
  /// Atom angles reduced to [0, 2pi), sorted.
  std::vector<double> singular_angles() const;
  bool arc_meets_singular(const Arc& arc) const;

  /// f o W
  InnerFunction precompose(const DiskAutomorphism& w) const;
  /// W o f
  InnerFunction postcompose(const DiskAutomorphism& w) const;
  /// omega_{f(0)} o f
  InnerFunction normalize_to_zero() const;

  bool operator==(const InnerFunction& o) const;

 private:
  Complex eval_base(Complex z) const noexcept;
  void check_singular(double t) const;

  std::vector<Complex> zeros_;
  std::vector<SingularAtom> atoms_;
  double front_ = 0.0;
  std::optional<DiskAutomorphism> outer_;
};

/// Total increase of the boundary argument over the arc, by adaptive
/// Gauss-Legendre quadrature of the angular derivative.
double arg_increase(const InnerFunction& f, const Arc& arc, double tol = 1e-13);

}  // namespace innerlab
