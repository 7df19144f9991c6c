#pragma once

#include <vector>

#include "innerlab/circle.hpp"

namespace innerlab {

/// Dense complex polynomial, coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  /// (0 + 1 z) shifted: z - root
  static Polynomial linear_factor(Complex root) { return Polynomial({-root, 1.0}); }

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

  Complex operator()(Complex z) const noexcept;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Complex s) const;

 private:
  void trim();
  std::vector<Complex> coeffs_{Complex{}};
};

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 1e-15;
};

/// All complex roots by simultaneous Aberth-Ehrlich iteration followed by
/// Newton polishing.  Throws NoConvergence if the iteration stalls.
std::vector<Complex> polynomial_roots(const Polynomial& p, const RootOptions& opt = {});

}  // namespace innerlab
