#include "innerlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/error.hpp"

namespace innerlab {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
  trim();
}

void Polynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Polynomial::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

std::vector<Complex> polynomial_roots(const Polynomial& p, const RootOptions& opt) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& a = p.coeffs();
  if (n == 1) return {-a[0] / a[1]};

  const Polynomial dp = p.derivative();

  // Initial guesses on a circle whose radius bounds the root moduli (Fujiwara).
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = std::pow(std::abs(a[k] / a[n]), 1.0 / (n - k));
    radius = std::max(radius, r);
  }
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, kTwoPi * (k + 0.25) / n + 0.4);

  // Mixed stopping test: relative step below tol, or residual at rounding level.
  double scale = 0.0;
  for (const auto& c : a) scale = std::max(scale, std::abs(c));
  std::vector<bool> done(n, false);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    bool all = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const Complex pv = p(z[k]);
      const Complex dv = dp(z[k]);
      const double mag = std::max(1.0, std::abs(z[k]));
      if (std::abs(pv) <= 1e-15 * scale * std::pow(mag, n) * (n + 1)) {
        done[k] = true;
        continue;
      }
      const Complex ratio = pv / dv;
      Complex s{};
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * s);
      z[k] -= step;
      if (std::abs(step) <= opt.tolerance * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all = false;
      }
    }
    if (all) break;
  }
  if (it == opt.max_iterations) {
    throw Error(ErrorCode::NoConvergence, "Aberth iteration did not converge");
  }
  // Newton polish; keep a step only if it reduces the residual.
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      const Complex dv = dp(r);
      if (dv == Complex{}) break;
      const Complex cand = r - p(r) / dv;
      if (std::abs(p(cand)) < std::abs(p(r))) r = cand; else break;
    }
  }
  return z;
}

}  // namespace innerlab
