#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

struct IntervalAtom {
  double position;  // in (-1, 1)
  double mass;      // > 0
};

/// Atomic positive measure with closed support inside (-1, 1).
class IntervalSingularMeasure {
 public:
  IntervalSingularMeasure() = default;
  explicit IntervalSingularMeasure(std::vector<IntervalAtom> atoms);

  const std::vector<IntervalAtom>& atoms() const noexcept { return atoms_; }
  double support_bound() const noexcept;
  double total_mass() const noexcept;
  bool is_even(double tol = 1e-12) const;
  /// Warns (returns true) when some neighbouring atoms are closer than `gap`.
  bool looks_absolutely_continuous(double gap = 1e-4) const;

 private:
  std::vector<IntervalAtom> atoms_;  // sorted by position
};

/// sum m_k / (z - s_k)
Complex cauchy_transform(const IntervalSingularMeasure& nu, Complex z);
double cauchy_transform_derivative(const IntervalSingularMeasure& nu, double t);

enum class HupVerdict { SufficientHolds, FailsAndNecessaryIfEven, FailsUndecided };
std::string_view to_string(HupVerdict v) noexcept;

struct HupCriterion {
  double value;        // sum m_k / (1 - s_k^2)
  HupVerdict verdict;
};

HupCriterion hup_criterion(const IntervalSingularMeasure& nu);
/// F(1) - F(-1)
double endpoint_gap(const IntervalSingularMeasure& nu);
/// Root y* > 0 of Re[F(1+iy) - F(-1+iy)] = 2 for even nu with criterion > 1.
double necessity_scan(const IntervalSingularMeasure& nu, double y_max = 1e3);

/// Cayley map z = (t - i)/(t + i) from the real line to T, and its inverse.
Complex cayley(Complex t);
Complex inverse_cayley(Complex z);

struct CayleyPair {
  InnerFunction theta;  // e^{i pi t}
  InnerFunction phi;    // e^{-i pi F(t)}
};

CayleyPair cayley_pair(const IntervalSingularMeasure& nu);

struct CurveSample {
  std::vector<double> t;
  std::vector<double> f_values;   // F(t)
  std::vector<double> weights;    // sqrt(1 + F'(t)^2)
  double step = 0.0;
  double window = 0.0;
  IntervalSingularMeasure measure;
};

/// Uniform samples of the curve t -> (t, F(t)) on [-window, window], with
/// an exclusion of radius `gap` around the atoms.
CurveSample sample_curve(const IntervalSingularMeasure& nu, double window, std::size_t n,
                         double gap = 1e-3);

struct FourierMoment {
  Complex value;
  double truncation_bound;  // integral of |f| * weight over window < |t| < 64 window
};

/// integral over the window of e^{-i m pi t} e^{-i n pi F(t)} f(t) w(t) dt.
FourierMoment fourier_moment(const CurveSample& curve, const std::function<double(double)>& f,
                             int m, int n);

}  // namespace innerlab
