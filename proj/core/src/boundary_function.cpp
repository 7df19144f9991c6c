#include "innerlab/boundary_function.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/error.hpp"
#include "innerlab/inner_function.hpp"
#include "innerlab/quadrature.hpp"

namespace innerlab {

BoundaryFunction::BoundaryFunction(Arc arc, std::vector<double> samples)
    : arc_(arc), samples_(std::move(samples)) {
  if (samples_.empty()) throw Error(ErrorCode::PreconditionFailed, "empty sample grid");
}

BoundaryFunction BoundaryFunction::sample(const Arc& arc, std::size_t m,
                                          const std::function<double(double)>& fn) {
  std::vector<double> s(m);
  const double h = arc.length() / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) s[i] = fn(arc.start() + (i + 0.5) * h);
  return BoundaryFunction(arc, std::move(s));
}

BoundaryFunction BoundaryFunction::constant(const Arc& arc, std::size_t m, double value) {
  return BoundaryFunction(arc, std::vector<double>(m, value));
}

double BoundaryFunction::operator()(double t) const noexcept {
  if (!arc_.contains(t)) return 0.0;
  const double u = arc_.offset(t) / step() - 0.5;
  const std::size_t n = samples_.size();
  if (u <= 0.0) return samples_.front();
  if (u >= static_cast<double>(n - 1)) return samples_.back();
  const auto i = static_cast<std::size_t>(u);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

double BoundaryFunction::l1_norm() const noexcept {
  double s = 0.0;
  for (double v : samples_) s += std::abs(v);
  return s * step();
}

double BoundaryFunction::integral() const noexcept {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s * step();
}

double BoundaryFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double BoundaryFunction::primitive(double s) const noexcept {
  // interpolant is constant on the two half cells at the ends, linear between
  const double h = step();
  const std::size_t n = samples_.size();
  s = std::clamp(s, 0.0, arc_.length());
  if (s <= 0.5 * h) return s * samples_.front();
  double acc = 0.5 * h * samples_.front();
  const double u = s / h - 0.5;  // in (0, n - 0.5]
  const std::size_t full = std::min(static_cast<std::size_t>(u), n - 1);
  // cells [i, i+1] fully covered
  // accumulate trapezoids up to node `full`
  for (std::size_t i = 0; i < full && i + 1 < n; ++i) acc += 0.5 * h * (samples_[i] + samples_[i + 1]);
  if (full >= n - 1) {
    return acc + (s - (n - 0.5) * h) * samples_.back();
  }
  const double w = u - static_cast<double>(full);
  const double mid = (1.0 - w) * samples_[full] + w * samples_[full + 1];
  return acc + 0.5 * w * h * (samples_[full] + mid);
}

double BoundaryFunction::integral_over(const ArcSet& set) const {
  double total = 0.0;
  const double a0 = wrap_positive(arc_.start());
  const double len = arc_.length();
  // The arc in [0, 2pi] coordinates is [a0, a0+len], possibly wrapping.
  for (const auto& iv : set.intervals()) {
    for (double shift : {0.0, kTwoPi}) {
      const double lo = std::max(iv.lo + shift, a0);
      const double hi = std::min(iv.hi + shift, a0 + len);
      if (hi > lo) total += primitive(hi - a0) - primitive(lo - a0);
    }
  }
  return total;
}

double BoundaryFunction::pairing(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) s += samples_[i] * g(node(i));
  return s * step();
}

ArcSet BoundaryFunction::support(double tol) const {
  ArcSet out;
  const double h = step();
  const std::size_t n = samples_.size();
  std::size_t i = 0;
  while (i < n) {
    if (std::abs(samples_[i]) <= tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && std::abs(samples_[j + 1]) > tol) ++j;
    const double lo = arc_.start() + std::max(0.0, (static_cast<double>(i) - 1.0)) * h;
    const double hi = arc_.start() + std::min(static_cast<double>(n), static_cast<double>(j) + 2.0) * h;
    out.add_range(lo, hi);
    i = j + 1;
  }
  return out;
}

BoundaryFunction BoundaryFunction::map(const std::function<double(double)>& fn) const {
  std::vector<double> s(samples_.size());
  std::transform(samples_.begin(), samples_.end(), s.begin(), fn);
  return BoundaryFunction(arc_, std::move(s));
}

BoundaryFunction BoundaryFunction::abs() const {
  return map([](double v) { return std::abs(v); });
}

BoundaryFunction boundary_arg(const InnerFunction& f, const Arc& arc, std::size_t grid_size) {
  for (const auto& s : f.atoms()) {
    if (arc.contains(s.angle) || f.distance_to_singular(arc.start()) <= kSingularExclusion) {
      throw Error(ErrorCode::SingularityInsideArc, "arc meets the singular set");
    }
  }
  if (grid_size == 0) throw Error(ErrorCode::PreconditionFailed, "grid_size must be positive");
  auto d = [&f](double t) { return f.angular_derivative(t); };
  std::vector<double> s(grid_size);
  const double h = arc.length() / static_cast<double>(grid_size);
  double value = std::arg(f.boundary_value(arc.start()));
  double prev = arc.start();
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double t = arc.start() + (i + 0.5) * h;
    value += integrate_adaptive(d, prev, t, 1e-14, 40);
    s[i] = value;
    prev = t;
  }
  return BoundaryFunction(arc, std::move(s));
}

}  // namespace innerlab
