#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace innerlab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for deciding that a point lies on the unit circle.
inline constexpr double kOnCircleTol = 1e-10;
/// Angular radius around a singular atom inside which evaluation is refused.
inline constexpr double kSingularExclusion = 1e-10;

/// Reduces an angle to the principal range (-pi, pi].
double wrap_angle(double t) noexcept;

/// Reduces an angle to [0, 2pi).
double wrap_positive(double t) noexcept;

/// Signed angular distance from `from` to `to`, in (-pi, pi].
double angular_difference(double from, double to) noexcept;

/// |angular_difference|.
double angular_distance(double a, double b) noexcept;

struct CirclePoint {
  double angle = 0.0;  // principal value in (-pi, pi]
  Complex value{1.0, 0.0};

  static CirclePoint from_angle(double t) noexcept;
  static CirclePoint from_complex(Complex z);
};

/// Open, counterclockwise arc {e^{it} : start < t < start + length}.
class Arc {
 public:
  Arc() = default;
  /// `length` must lie in (0, 2pi]; 2pi denotes the circle minus one point.
  Arc(double start, double length);

  static Arc between(double start, double end);  // ccw from start to end
  static Arc full_circle(double start = -kPi) { return Arc(start, kTwoPi); }
  static Arc upper_half() { return Arc(0.0, kPi); }
  static Arc lower_half() { return Arc(kPi, kPi); }

  double start() const noexcept { return start_; }
  double length() const noexcept { return length_; }
  double end() const noexcept { return start_ + length_; }
  bool is_full() const noexcept { return length_ >= kTwoPi; }

  /// Offset of t from the arc start, measured ccw, in [0, 2pi).
  double offset(double t) const noexcept;
  bool contains(double t) const noexcept;
  /// complement arc T \ closure(arc)
  Arc complement() const;

 private:
  double start_ = 0.0;
  double length_ = kTwoPi;
};

/// Finite union of disjoint closed intervals of [0, 2pi], interpreted as
/// subsets of the circle.
class ArcSet {
 public:
  struct Interval {
    double lo;
    double hi;
  };

  ArcSet() = default;
  static ArcSet from_arc(const Arc& arc);
  static ArcSet full();

  void add(const Arc& arc);
  /// Adds [lo, hi] in unwrapped coordinates (hi - lo may not exceed 2pi).
  void add_range(double lo, double hi);
  /// Adds many unwrapped ranges with a single merge pass.
  void add_ranges(const std::vector<Interval>& ranges);
  ArcSet unite(const ArcSet& other) const;
  ArcSet intersect(const ArcSet& other) const;

  bool empty() const noexcept { return intervals_.empty(); }
  bool is_full(double tol = 1e-12) const noexcept;
  double measure() const noexcept;
  bool contains(double t) const noexcept;
  ArcSet intersect(const Arc& arc) const;
  /// Length of the symmetric difference.
  double symmetric_difference(const ArcSet& other) const;

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }

 private:
  void insert(double lo, double hi);
  void normalize();

  std::vector<Interval> intervals_;  // sorted, disjoint, inside [0, 2pi]
};

}  // namespace innerlab
