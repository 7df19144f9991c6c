#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

struct PreimageOptions {
  double tail_tol = 1e-8;            // Clark mass left unenumerated
  std::size_t max_points = 50'000'000;
  /// Receives (atom angle, unenumerated mass next to that atom) per branch.
  std::function<void(double, double)> on_tail;
};

/// Solutions of f(zeta) = alpha on T.
struct PreimageSet {
  double target_angle = 0.0;
  std::vector<CirclePoint> points;  // sorted by angle
  std::vector<double> masses;       // 1 / |f'(zeta)|
  double tail_mass = 0.0;

  double total_mass() const noexcept;
  /// rows: angle,mass,target_angle
  std::string to_csv() const;
};

/// Streams every enumerated solution of f = e^{i target} to visit(angle, mass)
/// and returns the estimated unenumerated mass.  Infinite branches next to a
/// singular atom stop once the Euler-Maclaurin tail estimate drops below
/// tail_tol / (2 * number_of_atoms).
double visit_preimages(const InnerFunction& f, double target_angle, const PreimageOptions& opt,
                       const std::function<void(double, double)>& visit);

PreimageSet preimages_on_circle(const InnerFunction& f, Complex alpha, double tail_tol = 1e-8);

/// Solutions of f = e^{i target} with lo < t < hi where [lo, hi] (unwrapped)
/// contains no atom; masses optional.
std::vector<double> preimages_in_interval(const InnerFunction& f, double target_angle, double lo,
                                          double hi, std::vector<double>* masses = nullptr);

/// Same, on an arc; neighbourhoods of atoms of radius `exclusion` are skipped.
std::vector<double> preimages_in_arc(const InnerFunction& f, double target_angle, const Arc& arc,
                                     double exclusion = 1e-6, std::vector<double>* masses = nullptr);

/// Splits [lo, hi] into pieces on which the lift is continuous, removing
/// radius-`exclusion` neighbourhoods of atoms.
std::vector<ArcSet::Interval> continuity_pieces(const InnerFunction& f, double lo, double hi,
                                                double exclusion);

/// f(E) as a set of values on T.
ArcSet image_of_arcset(const InnerFunction& f, const ArcSet& e, double exclusion = 1e-6);
/// {t in domain : f(e^{it}) in v}.
ArcSet preimage_of_arcset(const InnerFunction& f, const ArcSet& v, const ArcSet& domain,
                          double exclusion = 1e-6);

/// Cyclic group of a finite Blaschke product tabulated on a uniform grid:
/// table[j][i] = g_j(grid[i]), g_1 = next preimage counterclockwise.
struct InvariantGroup {
  std::vector<double> grid;
  std::vector<std::vector<double>> table;

  std::size_t order() const noexcept { return table.size(); }
  /// g_j evaluated at an arbitrary angle.
  double apply(std::size_t j, double t) const;
};

InvariantGroup invariant_group(const InnerFunction& b, std::size_t grid_size);
/// g_j(t) computed directly (no table).
double invariant_group_element(const InnerFunction& b, std::size_t j, double t);

/// Local branch tau of f^{-1} o f with tau(from) = to.
class LocalInvariant {
 public:
  LocalInvariant(const InnerFunction& f, double from, double to, double arc_radius);

  double operator()(double t) const;
  double inverse(double t) const;
  /// |tau'(t)| = |f'(t)| / |f'(tau(t))|
  double derivative(double t) const;

  Arc source_arc() const { return Arc(from_ - radius_, 2.0 * radius_); }
  Arc target_arc() const;
  double from() const noexcept { return from_; }
  double to() const noexcept { return to_; }

 private:
  static double solve_near(const InnerFunction& f, double level, double centre);

  InnerFunction f_;
  double from_, to_, radius_;
  double offset_;  // lift(to) - lift(from), a multiple of 2pi
};

struct EndpointLambda {
  double lambda_prime_at_1;       // |lambda'(1)|, lambda = sigma o tau
  double tilde_prime_at_minus1;   // |lambda~'(-1)|, lambda~ = sigma^{-1} o tau^{-1}
  double product_residual;        // | lambda'(1) * lambda~'(-1) - 1 |
  /// lambda(e^{it}) as an angle, for t near 0.
  std::function<double(double)> lambda;
  std::function<double(double)> lambda_derivative;
};

/// Requires theta(1) = theta(-1) and phi(1) = phi(-1).
EndpointLambda endpoint_lambda(const InnerFunction& theta, const InnerFunction& phi,
                               double arc_radius = 0.3);

bool has_endpoint_structure(const InnerFunction& theta, const InnerFunction& phi,
                            double tol = 1e-9);

/// True when theta or phi has a singular atom within `tol` of +1 or -1.  The
/// half-circle stages then have infinitely many solutions near the endpoint,
/// and the dynamics functions throw SingularityTooClose.
bool atoms_on_split_points(const InnerFunction& theta, const InnerFunction& phi, double tol = 1e-8);

/// One step of the circle dynamics  T+ -> T- (same phi value) -> T+ (same
/// theta value).  Throws NoPreimageInArc when a stage has no solution and
/// PreconditionFailed when a stage is not univalent.
double dynamics_step(const InnerFunction& theta, const InnerFunction& phi, double t);

/// All branches of the dynamics (several when a half-circle covers T more
/// than once).  Images closer than `exclusion` to a singular atom are dropped.
std::vector<double> forward_images(const InnerFunction& theta, const InnerFunction& phi, double t,
                                   double exclusion = 1e-6);

}  // namespace innerlab
