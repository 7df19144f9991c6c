#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"
#include "innerlab/polynomial.hpp"

namespace innerlab {

struct InteriorPreimage {
  Complex point;
  int multiplicity;
};

struct InteriorPreimageSet {
  Complex target;
  std::vector<InteriorPreimage> points;
  int total_multiplicity() const noexcept;
};

/// Polynomial whose roots are the solutions of B(w) = v for the base
/// Blaschke factor of b (outer map excluded).
Polynomial blaschke_equation(const InnerFunction& b, Complex v);

/// Solutions of f(w) = z in the disk; roots closer than 1e-7 are merged.
InteriorPreimageSet interior_preimages(const InnerFunction& f, Complex z);

/// sum of -log|w| over f(w) = z.  Throws TargetEqualsCenterValue at z = f(0).
double nevanlinna(const InnerFunction& f, Complex z);
/// log |(1 - conj(z) f(0)) / (z - f(0))|
double littlewood_rhs(Complex f0, Complex z);
double littlewood_gap(const InnerFunction& f, Complex z);

/// Counting function of a polynomial self-map of the disk (not inner).
double nevanlinna_polynomial(const Polynomial& p, Complex z);

/// Positive harmonic weight u on a half disk, with its boundary normal
/// derivative  du(zeta) = lim u(r zeta)/(-log r) and a growth constant C with
/// u <= -C log|w| on the lower half disk.
struct HarmonicWeight {
  std::string name;
  std::function<double(Complex)> value;
  std::function<double(double)> boundary_derivative;
  double growth;
};

HarmonicWeight zero_weight();
HarmonicWeight log_weight();
/// Poisson kernel P(w, e^{i xi}) with xi in (0, pi).
HarmonicWeight poisson_weight(double xi);

/// f^{-1}(f(z)) without z.  Finite Blaschke: exact.  Single atom: closed form
/// branches until -log|w| < truncation.
std::vector<Complex> interior_orbit(const InnerFunction& f, Complex z, double truncation = 1e-10);

double generalized_counting(const InnerFunction& f, const HarmonicWeight& u, Complex z,
                            double truncation = 1e-10);

/// | N_{f,u}(z) / (-log|z|) - T_f(du)(zeta) |  at z = (1 - delta) zeta.
std::vector<double> boundary_limit_residual(const InnerFunction& theta, const HarmonicWeight& u,
                                            double zeta, const std::vector<double>& deltas);

/// (-log|theta(z)|)/(-log|z|) along the radius toward zeta.
std::vector<double> radial_log_ratio(const InnerFunction& theta, double zeta,
                                     const std::vector<double>& deltas);

struct LogEquivBounds {
  double c_low;
  double c_high;
};

/// Empirical range of (-log|theta(z)|)/(-log|z|) on the upper half disk.
/// Requires theta univalent on T+ (UnivalenceNotCertified otherwise).
LogEquivBounds log_equiv_bounds(const InnerFunction& theta, std::size_t samples,
                                std::uint64_t seed = 1);

/// sup over samples z in D+ of N_{theta,u}(z)/(-log|z|).
double counting_growth_constant(const InnerFunction& theta, const HarmonicWeight& u,
                                std::size_t samples, std::uint64_t seed = 1);

/// |N(z) - mean of N on the circle of radius r about z|.
double mean_value_defect(const InnerFunction& theta, const HarmonicWeight& u, Complex z,
                         double r = 1e-2, int points = 64);

/// rows: z_re,z_im,N,littlewood_rhs,gap
std::string counting_csv(const InnerFunction& f, const std::vector<Complex>& points);

}  // namespace innerlab
