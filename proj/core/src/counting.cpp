#include "innerlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/error.hpp"

namespace innerlab {

namespace {

constexpr double kClusterRadius = 1e-7;

// Target of the base factor for a value z of f.
Complex base_value(const InnerFunction& f, Complex z) {
  if (f.outer()) return f.outer()->inverse().apply(z);
  return z;
}

bool single_atom_base(const InnerFunction& f) {
  return f.zeros().empty() && f.atoms().size() == 1;
}

void require_supported(const InnerFunction& f) {
  if (!f.is_finite_blaschke() && !single_atom_base(f))
    throw Error(ErrorCode::UnsupportedFunction,
                "interior preimages need a finite Blaschke product or a single atom");
}

// Solutions of e^{i gamma} exp(-m (s + w)/(s - w)) = v, branch k.  Returns
// w_k for k = 0, 1, -1, 2, -2, ... until both sides are below `truncation`
// for the weight; the neglected tail is estimated from the last terms.
template <class Visit>
double visit_atom_branches(const InnerFunction& f, Complex v, double truncation,
                           const std::function<double(Complex)>& weight, Visit&& visit) {
  const SingularAtom atom = f.atoms().front();
  const Complex s = std::polar(1.0, atom.angle);
  const Complex logv = std::log(v * std::polar(1.0, -f.front_angle()));
  auto branch = [&](long k) {
    const Complex lk = -(logv + Complex(0.0, kTwoPi * static_cast<double>(k))) / atom.mass;
    return s * (lk - 1.0) / (lk + 1.0);
  };
  visit(branch(0));
  double tail = 0.0;
  for (int sign : {1, -1}) {
    double last = 0.0;
    long k = 1;
    for (;; ++k) {
      const Complex w = branch(sign * k);
      visit(w);
      last = weight(w);
      if (k > 8 && last < truncation) break;
      if (k > 50'000'000) break;
    }
    tail += last * static_cast<double>(k);
  }
  return tail;
}

Polynomial base_equation(const InnerFunction& b, Complex v) {
  std::vector<Complex> one{Complex(1.0, 0.0)};
  Polynomial p(one), q(one);
  for (Complex zj : b.zeros()) {
    p = p * Polynomial(std::vector<Complex>{-zj, Complex(1.0, 0.0)});
    q = q * Polynomial(std::vector<Complex>{Complex(1.0, 0.0), -std::conj(zj)});
  }
  // unimodular constant matching the base factor on the circle
  const double t = 0.123456789;
  const Complex e = std::polar(1.0, t);
  const Complex c = std::polar(1.0, b.base_lift(t)) * q(e) / p(e);
  const Complex cn = c / std::abs(c);
  return p * cn - q * v;
}

std::vector<InteriorPreimage> cluster(std::vector<Complex> roots) {
  std::vector<InteriorPreimage> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int mult = 1;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) < kClusterRadius) {
        used[j] = true;
        sum += roots[j];
        ++mult;
      }
    }
    out.push_back({sum / static_cast<double>(mult), mult});
  }
  return out;
}

double neg_log_abs(Complex w) { return -std::log(std::abs(w)); }

}  // namespace

int InteriorPreimageSet::total_multiplicity() const noexcept {
  int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

Polynomial blaschke_equation(const InnerFunction& b, Complex v) {
  if (!b.is_finite_blaschke())
    throw Error(ErrorCode::UnsupportedFunction, "blaschke_equation needs a finite Blaschke product");
  return base_equation(b, v);
}

InteriorPreimageSet interior_preimages(const InnerFunction& f, Complex z) {
  if (!f.is_finite_blaschke())
    throw Error(ErrorCode::UnsupportedFunction,
                "interior_preimages enumerates finite Blaschke products only");
  if (std::abs(z) >= 1.0) throw Error(ErrorCode::PreconditionFailed, "target must lie in the disk");
  InteriorPreimageSet out;
  out.target = z;
  if (f.zeros().empty()) return out;
  out.points = cluster(polynomial_roots(base_equation(f, base_value(f, z))));
  return out;
}

double nevanlinna(const InnerFunction& f, Complex z) {
  require_supported(f);
  const Complex f0 = f.eval(Complex(0.0, 0.0));
  if (std::abs(z - f0) < 1e-14)
    throw Error(ErrorCode::TargetEqualsCenterValue, "counting function is infinite at f(0)");
  if (std::abs(z) >= 1.0) throw Error(ErrorCode::PreconditionFailed, "target must lie in the disk");
  if (f.is_finite_blaschke()) {
    double n = 0.0;
    for (const auto& p : interior_preimages(f, z).points) n += p.multiplicity * neg_log_abs(p.point);
    return n;
  }
  double n = 0.0;
  const double tail = visit_atom_branches(f, base_value(f, z), 1e-12, neg_log_abs,
                                          [&](Complex w) { n += neg_log_abs(w); });
  return n + tail;
}

double littlewood_rhs(Complex f0, Complex z) {
  return std::log(std::abs((1.0 - std::conj(z) * f0) / (z - f0)));
}

double littlewood_gap(const InnerFunction& f, Complex z) {
  return littlewood_rhs(f.eval(Complex(0.0, 0.0)), z) - nevanlinna(f, z);
}

double nevanlinna_polynomial(const Polynomial& p, Complex z) {
  Polynomial q = p - Polynomial(std::vector<Complex>{z});
  double n = 0.0;
  for (Complex w : polynomial_roots(q))
    if (std::abs(w) < 1.0) n += neg_log_abs(w);
  return n;
}

HarmonicWeight zero_weight() {
  return {"zero", [](Complex) { return 0.0; }, [](double) { return 0.0; }, 0.0};
}

HarmonicWeight log_weight() {
  return {"log", [](Complex w) { return neg_log_abs(w); }, [](double) { return 1.0; }, 1.0};
}

HarmonicWeight poisson_weight(double xi) {
  if (!(xi > 0.0 && xi < kPi))
    throw Error(ErrorCode::PreconditionFailed, "Poisson pole must lie on the upper half circle");
  const Complex e = std::polar(1.0, xi);
  const double s = std::sin(xi);
  return {"poisson",
          [e](Complex w) { return (1.0 - std::norm(w)) / std::norm(e - w); },
          [e](double t) { return 2.0 / std::norm(e - std::polar(1.0, t)); }, 2.0 / (s * s)};
}

std::vector<Complex> interior_orbit(const InnerFunction& f, Complex z, double truncation) {
  require_supported(f);
  std::vector<Complex> pts;
  if (f.is_finite_blaschke()) {
    for (const auto& p : interior_preimages(f, f.eval(z)).points)
      for (int k = 0; k < p.multiplicity; ++k) pts.push_back(p.point);
  } else {
    visit_atom_branches(f, base_value(f, f.eval(z)), truncation, neg_log_abs,
                        [&](Complex w) { pts.push_back(w); });
  }
  if (pts.empty()) return pts;
  auto it = std::min_element(pts.begin(), pts.end(), [z](Complex a, Complex b) {
    return std::abs(a - z) < std::abs(b - z);
  });
  pts.erase(it);
  return pts;
}

double generalized_counting(const InnerFunction& f, const HarmonicWeight& u, Complex z,
                            double truncation) {
  require_supported(f);
  if (f.is_finite_blaschke()) {
    double n = 0.0;
    for (Complex w : interior_orbit(f, z, truncation)) n += u.value(w);
    return n;
  }
  std::vector<Complex> pts;
  const double tail = visit_atom_branches(f, base_value(f, f.eval(z)), truncation, u.value,
                                          [&](Complex w) { pts.push_back(w); });
  auto it = std::min_element(pts.begin(), pts.end(), [z](Complex a, Complex b) {
    return std::abs(a - z) < std::abs(b - z);
  });
  double n = 0.0;
  for (auto p = pts.begin(); p != pts.end(); ++p)
    if (p != it) n += u.value(*p);
  return n + tail;
}

std::vector<double> boundary_limit_residual(const InnerFunction& theta, const HarmonicWeight& u,
                                            double zeta, const std::vector<double>& deltas) {
  std::vector<double> masses;
  const auto pts = preimages_in_arc(theta, theta.lift(zeta), Arc::lower_half(), 1e-9, &masses);
  double limit = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) limit += u.boundary_derivative(pts[i]) * masses[i];
  limit *= theta.angular_derivative(zeta);
  std::vector<double> out;
  for (double d : deltas) {
    const Complex z = std::polar(1.0 - d, zeta);
    out.push_back(std::abs(generalized_counting(theta, u, z) / neg_log_abs(z) - limit));
  }
  return out;
}

std::vector<double> radial_log_ratio(const InnerFunction& theta, double zeta,
                                     const std::vector<double>& deltas) {
  std::vector<double> out;
  for (double d : deltas) {
    const Complex z = std::polar(1.0 - d, zeta);
    out.push_back(neg_log_abs(theta.eval(z)) / neg_log_abs(z));
  }
  return out;
}

namespace {

void require_univalent_upper(const InnerFunction& theta) {
  double inc = 0.0;
  try {
    inc = arg_increase(theta, Arc::upper_half());
  } catch (const Error&) {
    throw Error(ErrorCode::UnivalenceNotCertified, "singularity on the upper half circle");
  }
  if (!(inc <= kTwoPi * (1.0 + 1e-9)))
    throw Error(ErrorCode::UnivalenceNotCertified, "argument increase on T+ exceeds 2pi");
}

template <class F>
void sample_upper_disk(std::size_t n, std::uint64_t seed, F&& f) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(1e-6, kPi - 1e-6), ur(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::min(std::sqrt(ur(rng)), 1.0 - 1e-9);
    if (r < 1e-6) continue;
    f(std::polar(r, ua(rng)));
  }
}

}  // namespace

LogEquivBounds log_equiv_bounds(const InnerFunction& theta, std::size_t samples,
                                std::uint64_t seed) {
  require_univalent_upper(theta);
  LogEquivBounds b{std::numeric_limits<double>::infinity(), 0.0};
  sample_upper_disk(samples, seed, [&](Complex z) {
    const double q = neg_log_abs(theta.eval(z)) / neg_log_abs(z);
    b.c_low = std::min(b.c_low, q);
    b.c_high = std::max(b.c_high, q);
  });
  return b;
}

double counting_growth_constant(const InnerFunction& theta, const HarmonicWeight& u,
                                std::size_t samples, std::uint64_t seed) {
  double c = 0.0;
  sample_upper_disk(samples, seed, [&](Complex z) {
    c = std::max(c, generalized_counting(theta, u, z) / neg_log_abs(z));
  });
  return c;
}

double mean_value_defect(const InnerFunction& theta, const HarmonicWeight& u, Complex z, double r,
                         int points) {
  double mean = 0.0;
  for (int k = 0; k < points; ++k)
    mean += generalized_counting(theta, u, z + std::polar(r, kTwoPi * k / points));
  return std::abs(generalized_counting(theta, u, z) - mean / points);
}

std::string counting_csv(const InnerFunction& f, const std::vector<Complex>& points) {
  std::ostringstream os;
  os << "z_re,z_im,N,littlewood_rhs,gap\n";
  const Complex f0 = f.eval(Complex(0.0, 0.0));
  char buf[160];
  for (Complex z : points) {
    const double n = nevanlinna(f, z);
    const double r = littlewood_rhs(f0, z);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(), n, r,
                  r - n);
    os << buf;
  }
  return os.str();
}

}  // namespace innerlab
