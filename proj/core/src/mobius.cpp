#include "innerlab/mobius.hpp"

#include <cmath>

#include "innerlab/error.hpp"

namespace innerlab {

namespace {

using Mat = std::array<Complex, 4>;

Mat mul(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Mat inv(const Mat& x) { return {x[3], -x[1], -x[2], x[0]}; }

// (z - z1)(z2 - z3) / ((z - z3)(z2 - z1)): z1 -> 0, z2 -> 1, z3 -> inf
Mat cross_ratio(Complex z1, Complex z2, Complex z3) {
  return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}

}  // namespace

DiskAutomorphism::DiskAutomorphism(Complex center, double rotation)
    : center_(center), rotation_(wrap_angle(rotation)) {
  if (!(std::abs(center) < 1.0)) {
    throw Error(ErrorCode::PreconditionFailed, "automorphism center must lie in the open disk");
  }
  if (rotation == 0.0) rotation_ = 0.0;
}

DiskAutomorphism DiskAutomorphism::from_three_points(Complex p, Complex q, Complex r) {
  const Mat m = mul(inv(cross_ratio(p, q, r)), cross_ratio(1.0, Complex(0.0, 1.0), -1.0));
  return from_matrix(m);
}

Complex DiskAutomorphism::apply(Complex z) const noexcept {
  const Complex u = std::polar(1.0, rotation_);
  return u * (z - center_) / (1.0 - std::conj(center_) * z);
}

Complex DiskAutomorphism::derivative(Complex z) const noexcept {
  const Complex u = std::polar(1.0, rotation_);
  const Complex den = 1.0 - std::conj(center_) * z;
  return u * (1.0 - std::norm(center_)) / (den * den);
}

DiskAutomorphism DiskAutomorphism::inverse() const {
  // w = u (z - c)/(1 - c' z)  =>  z = (w u^{-1} + c)/(1 + c' u^{-1} w)
  return DiskAutomorphism(-center_ * std::polar(1.0, rotation_), -rotation_);
}

DiskAutomorphism DiskAutomorphism::compose(const DiskAutomorphism& other) const {
  return from_matrix(mul(matrix(), other.matrix()));
}

double DiskAutomorphism::boundary_lift(double t) const noexcept {
  const Complex w = 1.0 - std::conj(center_) * std::polar(1.0, t);
  return rotation_ + t - 2.0 * std::arg(w);
}

double DiskAutomorphism::boundary_derivative(double t) const noexcept {
  const Complex w = 1.0 - std::conj(center_) * std::polar(1.0, t);
  return (1.0 - std::norm(center_)) / std::norm(w);
}

std::array<Complex, 4> DiskAutomorphism::matrix() const noexcept {
  const Complex u = std::polar(1.0, rotation_);
  return {u, -u * center_, -std::conj(center_), 1.0};
}

DiskAutomorphism DiskAutomorphism::from_matrix(const std::array<Complex, 4>& m) {
  if (std::abs(m[0]) == 0.0 || std::abs(m[3]) == 0.0) {
    throw Error(ErrorCode::PreconditionFailed, "matrix does not define a disk automorphism");
  }
  const Complex c = -m[1] / m[0];
  const Complex u = m[0] / m[3];
  if (std::abs(std::abs(u) - 1.0) > 1e-8) {
    throw Error(ErrorCode::PreconditionFailed, "matrix does not preserve the unit circle");
  }
  return DiskAutomorphism(c, std::arg(u));
}

}  // namespace innerlab
