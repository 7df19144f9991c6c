#include "innerlab/circle.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/error.hpp"

namespace innerlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EvaluationAtSingularity: return "EvaluationAtSingularity";
    case ErrorCode::SingularityInsideArc: return "SingularityInsideArc";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TargetNotUnimodular: return "TargetNotUnimodular";
    case ErrorCode::DegenerateDegree: return "DegenerateDegree";
    case ErrorCode::ValuesDisagree: return "ValuesDisagree";
    case ErrorCode::SingularityTooClose: return "SingularityTooClose";
    case ErrorCode::EndpointValuesDisagree: return "EndpointValuesDisagree";
    case ErrorCode::NoPreimageInArc: return "NoPreimageInArc";
    case ErrorCode::TargetEqualsCenterValue: return "TargetEqualsCenterValue";
    case ErrorCode::UnivalenceNotCertified: return "UnivalenceNotCertified";
    case ErrorCode::SupportOverlap: return "SupportOverlap";
    case ErrorCode::EndpointStructureUnavailable: return "EndpointStructureUnavailable";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::WrongFixedPointDerivative: return "WrongFixedPointDerivative";
    case ErrorCode::EvaluationAtAtom: return "EvaluationAtAtom";
    case ErrorCode::NoRootInRange: return "NoRootInRange";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::UnsupportedFunction: return "UnsupportedFunction";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "UnknownError";
}

double wrap_angle(double t) noexcept {
  double r = std::remainder(t, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double wrap_positive(double t) noexcept {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double angular_difference(double from, double to) noexcept { return wrap_angle(to - from); }

double angular_distance(double a, double b) noexcept { return std::abs(angular_difference(a, b)); }

CirclePoint CirclePoint::from_angle(double t) noexcept {
  const double a = wrap_angle(t);
  return {a, Complex(std::cos(a), std::sin(a))};
}

CirclePoint CirclePoint::from_complex(Complex z) {
  if (std::abs(std::abs(z) - 1.0) > kOnCircleTol) {
    throw Error(ErrorCode::PreconditionFailed, "point is not on the unit circle");
  }
  return from_angle(std::arg(z));
}

Arc::Arc(double start, double length) : start_(start), length_(length) {
  if (!(length > 0.0) || length > kTwoPi * (1.0 + 1e-15)) {
    throw Error(ErrorCode::PreconditionFailed, "arc length must lie in (0, 2pi]");
  }
  length_ = std::min(length, kTwoPi);
}

Arc Arc::between(double start, double end) {
  double len = wrap_positive(end - start);
  if (len == 0.0) len = kTwoPi;
  return Arc(start, len);
}

double Arc::offset(double t) const noexcept { return wrap_positive(t - start_); }

bool Arc::contains(double t) const noexcept {
  const double d = offset(t);
  return d > 0.0 && d < length_;
}

Arc Arc::complement() const {
  if (is_full()) throw Error(ErrorCode::PreconditionFailed, "full circle has no complement arc");
  return Arc(end(), kTwoPi - length_);
}

ArcSet ArcSet::from_arc(const Arc& arc) {
  ArcSet s;
  s.add(arc);
  return s;
}

ArcSet ArcSet::full() {
  ArcSet s;
  s.intervals_.push_back({0.0, kTwoPi});
  return s;
}

void ArcSet::add(const Arc& arc) { add_range(arc.start(), arc.end()); }

void ArcSet::add_range(double lo, double hi) {
  if (hi < lo) std::swap(lo, hi);
  if (hi - lo >= kTwoPi) {
    intervals_.assign(1, {0.0, kTwoPi});
    return;
  }
  if (hi == lo) return;
  const double a = wrap_positive(lo);
  const double b = a + (hi - lo);
  if (b <= kTwoPi) {
    insert(a, b);
  } else {
    insert(a, kTwoPi);
    insert(0.0, b - kTwoPi);
  }
}

void ArcSet::insert(double lo, double hi) {
  intervals_.push_back({lo, hi});
  normalize();
}

void ArcSet::add_ranges(const std::vector<Interval>& ranges) {
  for (const auto& r : ranges) {
    double lo = r.lo, hi = r.hi;
    if (hi < lo) std::swap(lo, hi);
    if (hi - lo >= kTwoPi) {
      intervals_.assign(1, {0.0, kTwoPi});
      return;
    }
    if (hi == lo) continue;
    const double a = wrap_positive(lo);
    const double b = a + (hi - lo);
    if (b <= kTwoPi) {
      intervals_.push_back({a, b});
    } else {
      intervals_.push_back({a, kTwoPi});
      intervals_.push_back({0.0, b - kTwoPi});
    }
  }
  normalize();
}

ArcSet ArcSet::unite(const ArcSet& other) const {
  ArcSet s = *this;
  s.intervals_.insert(s.intervals_.end(), other.intervals_.begin(), other.intervals_.end());
  s.normalize();
  return s;
}

void ArcSet::normalize() {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  merged.reserve(intervals_.size());
  for (const auto& iv : intervals_) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  intervals_.swap(merged);
}

bool ArcSet::is_full(double tol) const noexcept { return measure() >= kTwoPi - tol; }

double ArcSet::measure() const noexcept {
  double m = 0.0;
  for (const auto& iv : intervals_) m += iv.hi - iv.lo;
  return m;
}

bool ArcSet::contains(double t) const noexcept {
  const double a = wrap_positive(t);
  for (const auto& iv : intervals_) {
    if (a >= iv.lo && a <= iv.hi) return true;
  }
  return false;
}

namespace {

std::vector<ArcSet::Interval> intersect_lists(const std::vector<ArcSet::Interval>& x,
                                              const std::vector<ArcSet::Interval>& y) {
  std::vector<ArcSet::Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (hi > lo) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) ++i; else ++j;
  }
  return out;
}

}  // namespace

ArcSet ArcSet::intersect(const ArcSet& other) const {
  ArcSet s;
  s.intervals_ = intersect_lists(intervals_, other.intervals_);
  return s;
}

ArcSet ArcSet::intersect(const Arc& arc) const {
  const ArcSet other = from_arc(arc);
  ArcSet s;
  s.intervals_ = intersect_lists(intervals_, other.intervals_);
  return s;
}

double ArcSet::symmetric_difference(const ArcSet& other) const {
  double common = 0.0;
  for (const auto& iv : intersect_lists(intervals_, other.intervals_)) common += iv.hi - iv.lo;
  return measure() + other.measure() - 2.0 * common;
}

}  // namespace innerlab
