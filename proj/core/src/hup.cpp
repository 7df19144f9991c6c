#include "innerlab/hup.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/error.hpp"
#include "innerlab/quadrature.hpp"

namespace innerlab {

IntervalSingularMeasure::IntervalSingularMeasure(std::vector<IntervalAtom> atoms)
    : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const IntervalAtom& a, const IntervalAtom& b) { return a.position < b.position; });
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (!(std::abs(atoms_[k].position) < 1.0) || !(atoms_[k].mass > 0.0)) {
      throw Error(ErrorCode::PreconditionFailed, "atoms need |s| < 1 and positive mass");
    }
    if (k && atoms_[k].position == atoms_[k - 1].position) {
      throw Error(ErrorCode::PreconditionFailed, "atom positions must be distinct");
    }
  }
}

double IntervalSingularMeasure::support_bound() const noexcept {
  double b = 0.0;
  for (const auto& a : atoms_) b = std::max(b, std::abs(a.position));
  return b;
}

double IntervalSingularMeasure::total_mass() const noexcept {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

bool IntervalSingularMeasure::is_even(double tol) const {
  const std::size_t n = atoms_.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = atoms_[k];
    const auto& b = atoms_[n - 1 - k];
    if (std::abs(a.position + b.position) > tol || std::abs(a.mass - b.mass) > tol) return false;
  }
  return true;
}

bool IntervalSingularMeasure::looks_absolutely_continuous(double gap) const {
  for (std::size_t k = 1; k < atoms_.size(); ++k) {
    if (atoms_[k].position - atoms_[k - 1].position < gap) return true;
  }
  return false;
}

Complex cauchy_transform(const IntervalSingularMeasure& nu, Complex z) {
  Complex s{};
  for (const auto& a : nu.atoms()) {
    const Complex d = z - a.position;
    if (std::abs(d) <= 1e-12) throw Error(ErrorCode::EvaluationAtAtom, "evaluation at an atom");
    s += a.mass / d;
  }
  return s;
}

double cauchy_transform_derivative(const IntervalSingularMeasure& nu, double t) {
  double s = 0.0;
  for (const auto& a : nu.atoms()) {
    const double d = t - a.position;
    if (std::abs(d) <= 1e-12) throw Error(ErrorCode::EvaluationAtAtom, "evaluation at an atom");
    s -= a.mass / (d * d);
  }
  return s;
}

std::string_view to_string(HupVerdict v) noexcept {
  switch (v) {
    case HupVerdict::SufficientHolds: return "SufficientHolds";
    case HupVerdict::FailsAndNecessaryIfEven: return "FailsAndNecessaryIfEven";
    case HupVerdict::FailsUndecided: return "FailsUndecided";
  }
  return "Unknown";
}

HupCriterion hup_criterion(const IntervalSingularMeasure& nu) {
  double v = 0.0;
  for (const auto& a : nu.atoms()) v += a.mass / (1.0 - a.position * a.position);
  HupVerdict verdict = HupVerdict::SufficientHolds;
  if (v > 1.0) verdict = nu.is_even() ? HupVerdict::FailsAndNecessaryIfEven : HupVerdict::FailsUndecided;
  return {v, verdict};
}

double endpoint_gap(const IntervalSingularMeasure& nu) {
  return (cauchy_transform(nu, 1.0) - cauchy_transform(nu, -1.0)).real();
}

double necessity_scan(const IntervalSingularMeasure& nu, double y_max) {
  if (!nu.is_even()) throw Error(ErrorCode::PreconditionFailed, "necessity scan needs an even measure");
  if (hup_criterion(nu).value <= 1.0) {
    throw Error(ErrorCode::PreconditionFailed, "criterion holds; nothing to scan");
  }
  auto gap = [&](double y) {
    const Complex d = cauchy_transform(nu, Complex(1.0, y)) - cauchy_transform(nu, Complex(-1.0, y));
    if (std::abs(d.imag()) > 1e-10 * std::max(1.0, std::abs(d))) {
      throw Error(ErrorCode::NoConvergence, "gap is not real for this measure");
    }
    return d.real() - 2.0;
  };
  double lo = 1e-6, hi = y_max;
  double glo = gap(lo), ghi = gap(hi);
  if (!(glo > 0.0 && ghi < 0.0)) throw Error(ErrorCode::NoRootInRange, "no sign change on [1e-6, y_max]");
  // gap decreases in y: bisection down to rounding
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (g == 0.0) return mid;
    if (g > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Complex cayley(Complex t) { return (t - Complex(0, 1)) / (t + Complex(0, 1)); }

Complex inverse_cayley(Complex z) { return Complex(0, 1) * (1.0 + z) / (1.0 - z); }

CayleyPair cayley_pair(const IntervalSingularMeasure& nu) {
  CayleyPair p;
  p.theta = InnerFunction::single_atom(0.0, kPi);
  std::vector<SingularAtom> atoms;
  double front = 0.0;
  for (const auto& a : nu.atoms()) {
    // e^{-i pi m/(t-s)} = e^{i mu s} exp(-mu (w+z)/(w-z)),  mu = pi m/(1+s^2)
    const double mu = kPi * a.mass / (1.0 + a.position * a.position);
    atoms.push_back({std::arg(cayley(a.position)), mu});
    front += mu * a.position;
  }
  p.phi = InnerFunction({}, std::move(atoms), wrap_angle(front));
  return p;
}

CurveSample sample_curve(const IntervalSingularMeasure& nu, double window, std::size_t n,
                         double gap) {
  CurveSample c;
  c.window = window;
  c.measure = nu;
  c.step = 2.0 * window / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -window + (i + 0.5) * c.step;
    bool near = false;
    for (const auto& a : nu.atoms()) near |= std::abs(t - a.position) < gap;
    if (near) continue;
    const double d = cauchy_transform_derivative(nu, t);
    c.t.push_back(t);
    c.f_values.push_back(cauchy_transform(nu, t).real());
    c.weights.push_back(std::sqrt(1.0 + d * d));
  }
  return c;
}

FourierMoment fourier_moment(const CurveSample& curve, const std::function<double(double)>& f,
                             int m, int n) {
  Complex s{};
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    const double phase = -kPi * (m * curve.t[i] + n * curve.f_values[i]);
    s += std::polar(f(curve.t[i]) * curve.weights[i], phase);
  }
  auto outside = [&](double t) {
    const double d = cauchy_transform_derivative(curve.measure, t);
    return std::abs(f(t)) * std::sqrt(1.0 + d * d);
  };
  const double w = curve.window;
  double tail = 0.0;
  if (w > 1.0) {
    tail = integrate_adaptive(outside, w, 64.0 * w, 1e-14) +
           integrate_adaptive(outside, -64.0 * w, -w, 1e-14);
  }
  return {s * curve.step, tail};
}

}  // namespace innerlab
