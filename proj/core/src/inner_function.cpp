#include "innerlab/inner_function.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/error.hpp"
#include "innerlab/quadrature.hpp"

namespace innerlab {

InnerFunction::InnerFunction(std::vector<Complex> zeros, std::vector<SingularAtom> atoms,
                             double front_angle, std::optional<DiskAutomorphism> outer)
    : zeros_(std::move(zeros)), atoms_(std::move(atoms)), front_(front_angle), outer_(outer) {
  for (const auto& z : zeros_) {
    if (!(std::abs(z) < 1.0 - 1e-14)) {
      throw Error(ErrorCode::PreconditionFailed, "zeros must lie strictly inside the disk");
    }
  }
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (!(atoms_[k].mass > 0.0) || !std::isfinite(atoms_[k].angle)) {
      throw Error(ErrorCode::PreconditionFailed, "singular atoms need positive mass");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (angular_distance(atoms_[j].angle, atoms_[k].angle) < kSingularExclusion) {
        throw Error(ErrorCode::PreconditionFailed, "singular atoms must be distinct");
      }
    }
  }
  if (outer_ && outer_->is_identity()) outer_.reset();
}

InnerFunction InnerFunction::blaschke(std::vector<Complex> zeros, double front_angle) {
  return InnerFunction(std::move(zeros), {}, front_angle);
}

InnerFunction InnerFunction::monomial(int d) {
  return InnerFunction(std::vector<Complex>(static_cast<std::size_t>(std::max(d, 0))), {}, 0.0);
}

InnerFunction InnerFunction::single_atom(double angle, double mass, double front_angle) {
  return InnerFunction({}, {{angle, mass}}, front_angle);
}

std::size_t InnerFunction::degree() const noexcept {
  return atoms_.empty() ? zeros_.size() : kInfiniteDegree;
}

Complex InnerFunction::eval_base(Complex z) const noexcept {
  Complex v = std::polar(1.0, front_);
  for (const auto& a : zeros_) {
    const double r = std::abs(a);
    const Complex c = r == 0.0 ? Complex(1.0) : std::conj(a) / r;
    v *= c * (z - a) / (1.0 - std::conj(a) * z);
  }
  Complex expo{};
  for (const auto& s : atoms_) {
    const Complex zeta = std::polar(1.0, s.angle);
    expo -= s.mass * (zeta + z) / (zeta - z);
  }
  return atoms_.empty() ? v : v * std::exp(expo);
}

double InnerFunction::base_lift(double t) const noexcept {
  double phi = front_;
  const Complex e = std::polar(1.0, t);
  for (const auto& a : zeros_) {
    phi += t - 2.0 * std::arg(1.0 - std::conj(a) * e);
    if (a != Complex{}) phi -= std::arg(a);
  }
  for (const auto& s : atoms_) phi += s.mass / std::tan(0.5 * (s.angle - t));
  return phi;
}

double InnerFunction::base_derivative(double t) const noexcept {
  double d = 0.0;
  const Complex e = std::polar(1.0, t);
  for (const auto& a : zeros_) d += (1.0 - std::norm(a)) / std::norm(e - a);
  for (const auto& s : atoms_) {
    const double sn = std::sin(0.5 * (s.angle - t));
    d += s.mass / (2.0 * sn * sn);
  }
  return d;
}

double InnerFunction::base_lift_offset(std::size_t k, double delta, double t) const noexcept {
  double phi = front_;
  const Complex e = std::polar(1.0, t);
  for (const auto& a : zeros_) {
    phi += t - 2.0 * std::arg(1.0 - std::conj(a) * e);
    if (a != Complex{}) phi -= std::arg(a);
  }
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const double x = j == k ? -0.5 * delta : 0.5 * (atoms_[j].angle - t);
    phi += atoms_[j].mass / std::tan(x);
  }
  return phi;
}

double InnerFunction::base_derivative_offset(std::size_t k, double delta, double t) const noexcept {
  double d = 0.0;
  const Complex e = std::polar(1.0, t);
  for (const auto& a : zeros_) d += (1.0 - std::norm(a)) / std::norm(e - a);
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const double sn = std::sin(j == k ? 0.5 * delta : 0.5 * (atoms_[j].angle - t));
    d += atoms_[j].mass / (2.0 * sn * sn);
  }
  return d;
}

double InnerFunction::base_target(double angle) const noexcept {
  if (!outer_) return angle;
  return std::arg(outer_->inverse().apply(std::polar(1.0, angle)));
}

double InnerFunction::outer_factor(double beta) const noexcept {
  return outer_ ? outer_->boundary_derivative(beta) : 1.0;
}

void InnerFunction::check_singular(double t) const {
  if (distance_to_singular(t) <= kSingularExclusion) {
    throw Error(ErrorCode::EvaluationAtSingularity, "point lies on a singular atom");
  }
}

Complex InnerFunction::eval(Complex z) const {
  const double r = std::abs(z);
  if (r > 1.0 + kOnCircleTol) {
    throw Error(ErrorCode::PreconditionFailed, "evaluation point outside the closed disk");
  }
  if (r >= 1.0 - kOnCircleTol) return boundary_value(std::arg(z));
  const Complex v = eval_base(z);
  return outer_ ? outer_->apply(v) : v;
}

Complex InnerFunction::boundary_value(double t) const { return std::polar(1.0, lift(t)); }

double InnerFunction::lift(double t) const {
  check_singular(t);
  const double b = base_lift(t);
  return outer_ ? outer_->boundary_lift(b) : b;
}

double InnerFunction::angular_derivative(double t) const {
  check_singular(t);
  const double d = base_derivative(t);
  return outer_ ? d * outer_->boundary_derivative(base_lift(t)) : d;
}

double InnerFunction::distance_to_singular(double t) const noexcept {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& s : atoms_) d = std::min(d, angular_distance(t, s.angle));
  return d;
}

std::vector<double> InnerFunction::singular_angles() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& s : atoms_) out.push_back(wrap_positive(s.angle));
  std::sort(out.begin(), out.end());
  return out;
}

bool InnerFunction::arc_meets_singular(const Arc& arc) const {
  for (const auto& s : atoms_) {
    if (arc.contains(s.angle) || angular_distance(arc.start(), s.angle) <= kSingularExclusion ||
        angular_distance(arc.end(), s.angle) <= kSingularExclusion) {
      return true;
    }
  }
  return false;
}

InnerFunction InnerFunction::precompose(const DiskAutomorphism& w) const {
  if (w.is_identity()) return *this;
  const DiskAutomorphism winv = w.inverse();
  std::vector<Complex> zeros;
  zeros.reserve(zeros_.size());
  for (const auto& a : zeros_) zeros.push_back(winv.apply(a));
  std::vector<SingularAtom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& s : atoms_) {
    const Complex eta = winv.apply(std::polar(1.0, s.angle));
    const double dw = std::abs(w.derivative(eta));
    atoms.push_back({std::arg(eta), s.mass / dw});
  }
  InnerFunction g(std::move(zeros), std::move(atoms), 0.0);
  // The two base functions differ by a unimodular constant; read it off
  // at the test point where the values are least degenerate.
  const Complex probes[] = {0.0, 0.5, -0.5, Complex(0, 0.5), Complex(0, -0.5)};
  Complex best_p = probes[0];
  double best = -1.0;
  for (const Complex& p : probes) {
    const double m = std::abs(g.eval_base(p));
    if (m > best) {
      best = m;
      best_p = p;
    }
  }
  const Complex ratio = eval_base(w.apply(best_p)) / g.eval_base(best_p);
  g.front_ = std::arg(ratio);
  g.outer_ = outer_;
  return g;
}

InnerFunction InnerFunction::postcompose(const DiskAutomorphism& w) const {
  InnerFunction g = *this;
  g.outer_ = outer_ ? w.compose(*outer_) : w;
  if (g.outer_->is_identity()) g.outer_.reset();
  return g;
}

InnerFunction InnerFunction::normalize_to_zero() const {
  const Complex v = eval(0.0);
  if (v == Complex{}) return *this;
  return postcompose(DiskAutomorphism(v));
}

bool InnerFunction::operator==(const InnerFunction& o) const {
  if (zeros_ != o.zeros_ || front_ != o.front_ || atoms_.size() != o.atoms_.size()) return false;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (atoms_[k].angle != o.atoms_[k].angle || atoms_[k].mass != o.atoms_[k].mass) return false;
  }
  if (outer_.has_value() != o.outer_.has_value()) return false;
  return !outer_ || (outer_->center() == o.outer_->center() &&
                     outer_->rotation() == o.outer_->rotation());
}

double arg_increase(const InnerFunction& f, const Arc& arc, double tol) {
  for (const auto& s : f.atoms()) {
    if (arc.contains(s.angle)) {
      throw Error(ErrorCode::SingularityInsideArc, "arc contains a singular atom");
    }
  }
  const double a = arc.start(), b = arc.end();
  if (f.distance_to_singular(a) <= kSingularExclusion ||
      f.distance_to_singular(b) <= kSingularExclusion) {
    return std::numeric_limits<double>::infinity();
  }
  // Split into panels graded toward nearby atoms so the integrand stays tame.
  std::vector<double> cuts{a};
  const int pieces = 16;
  for (int i = 1; i < pieces; ++i) cuts.push_back(a + (b - a) * i / pieces);
  cuts.push_back(b);
  double total = 0.0;
  auto g = [&f](double t) { return f.angular_derivative(t); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_adaptive(g, cuts[i], cuts[i + 1], tol / pieces, 60);
  }
  return total;
}

}  // namespace innerlab
