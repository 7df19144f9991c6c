#include "innerlab/boundary_maps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "innerlab/error.hpp"

namespace innerlab {

namespace {

// Root of an increasing function on [lo, hi] with g(lo) <= 0 <= g(hi);
// Newton steps that leave the bracket, or fail to halve it every two
// iterations (cycling across an inflection), are replaced by bisection.
template <class G>
double newton_bracket(G&& g, double lo, double hi, double x, double vtol = 0.0,
                      int max_iter = 200) {
  if (!(x >= lo && x <= hi)) x = 0.5 * (lo + hi);
  double width_prev = hi - lo, width_prev2 = 2.0 * (hi - lo);
  for (int it = 0; it < max_iter; ++it) {
    const auto [v, d] = g(x);
    if (std::abs(v) <= vtol) return x;
    if (v < 0.0) lo = x; else hi = x;
    const bool slow = hi - lo > 0.5 * width_prev2;
    width_prev2 = width_prev;
    width_prev = hi - lo;
    double nx = x - v / d;
    if (slow || !std::isfinite(nx) || nx <= lo || nx >= hi) nx = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(nx - x) <= 4e-16 * scale || hi - lo <= 4e-16 * scale) return nx;
    x = nx;
  }
  throw Error(ErrorCode::NoConvergence, "root refinement stalled");
}

// base-lift root of f on [lo, hi] at the given level
double solve_base(const InnerFunction& f, double level, double lo, double hi, double guess) {
  auto g = [&](double t) {
    return std::pair<double, double>(f.base_lift(t) - level, f.base_derivative(t));
  };
  return newton_bracket(g, lo, hi, guess, 8e-16 * std::max(1.0, std::abs(level)));
}

double solve_full(const InnerFunction& f, double level, double lo, double hi, double guess) {
  auto g = [&](double t) {
    return std::pair<double, double>(f.lift(t) - level, f.angular_derivative(t));
  };
  return newton_bracket(g, lo, hi, guess, 8e-16 * std::max(1.0, std::abs(level)));
}

// Enumerates the branch of solutions running from `mid` toward the singular
// end `end` (dir = +1 right, -1 left).  Works in u = 1/|end - t|, where the
// lift is asymptotically linear.
double enumerate_branch(const InnerFunction& f, double beta, double mid, std::size_t atom,
                        double end, int dir, double scale, double tol_end, std::size_t& budget,
                        const std::function<void(double, double)>& visit) {
  const double phim = f.base_lift(mid);
  long long n = static_cast<long long>(std::ceil((phim - beta) / kTwoPi));
  if (dir < 0) --n;
  // t = end - dir/u; the atom term is evaluated from its offset -dir/u
  auto lift_u = [&](double u) { return f.base_lift_offset(atom, -dir / u, end - dir / u); };
  auto deriv_u = [&](double u) { return f.base_derivative_offset(atom, -dir / u, end - dir / u); };
  double u_prev = 1.0 / std::abs(end - mid);
  double m1 = -1.0, m2 = -1.0, m3 = -1.0;  // last three masses, newest first
  std::size_t count = 0;
  while (true) {
    const double level = beta + kTwoPi * static_cast<double>(n);
    auto g = [&](double u) {
      return std::pair<double, double>(dir * (lift_u(u) - level), deriv_u(u) / (u * u));
    };
    // bracket [lo, hi] from a tangent step toward the next level
    double lo = u_prev;
    const auto [v0, d0] = g(lo);
    double du = (v0 < 0.0 ? -v0 : 0.0) / d0;
    if (!std::isfinite(du) || du <= 0.0) du = 1e-12 * std::max(1.0, lo);
    double hi = lo + 1.5 * du;
    while (g(hi).first < 0.0) {
      lo = hi;
      du *= 2.0;
      hi = lo + du;
    }
    const double vtol = 8e-16 * std::max(1.0, std::abs(level));
    const double u = v0 == 0.0 ? u_prev : newton_bracket(g, lo, hi, u_prev + du, vtol);
    const double mass = scale / deriv_u(u);
    visit(end - dir / u, mass);
    ++count;
    m3 = m2;
    m2 = m1;
    m1 = mass;
    u_prev = u;
    n += dir;
    if (budget > 0) --budget;
    if (count >= 8) {
      // Euler-Maclaurin: sum_{n>N} m_n = int_N^inf m - m_N/2 - m'(N)/12
      const double slope = 0.5 * (3.0 * m1 - 4.0 * m2 + m3);
      const double tail = scale / (u * kTwoPi) - 0.5 * m1 - slope / 12.0;
      if (tail <= tol_end || budget == 0) return std::max(tail, 0.0);
    }
  }
}

}  // namespace

double PreimageSet::total_mass() const noexcept {
  double s = tail_mass;
  for (double m : masses) s += m;
  return s;
}

std::string PreimageSet::to_csv() const {
  std::ostringstream os;
  os << "angle,mass,target_angle\n";
  char buf[128];
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", points[i].angle,
                  i < masses.size() ? masses[i] : 0.0, target_angle);
    os << buf;
  }
  return os.str();
}

double visit_preimages(const InnerFunction& f, double target_angle, const PreimageOptions& opt,
                       const std::function<void(double, double)>& visit) {
  const double beta = f.base_target(target_angle);
  // masses are 1/|f'| = 1/(|O'| * base derivative), and |O'| is constant on the fibre
  const double scale = 1.0 / f.outer_factor(beta);
  if (f.atoms().empty()) {
    const std::size_t d = f.degree();
    if (d == 0) return 0.0;
    const double lo = 0.0, hi = kTwoPi;
    const double philo = f.base_lift(lo);
    long long n = static_cast<long long>(std::ceil((philo - beta) / kTwoPi));
    double prev = lo;
    for (std::size_t k = 0; k < d; ++k, ++n) {
      const double level = beta + kTwoPi * static_cast<double>(n);
      const double dprev = f.base_derivative(prev);
      const double guess = std::min(hi, prev + (level - f.base_lift(prev)) / dprev);
      const double t = solve_base(f, level, prev, hi, guess);
      visit(t, scale / f.base_derivative(t));
      prev = t;
    }
    return 0.0;
  }
  const auto& atoms = f.atoms();
  const std::size_t k_atoms = atoms.size();
  std::vector<std::size_t> order(k_atoms);
  std::vector<double> pos(k_atoms);
  for (std::size_t k = 0; k < k_atoms; ++k) {
    order[k] = k;
    pos[k] = wrap_positive(atoms[k].angle);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pos[x] < pos[y]; });
  const double tol_end = opt.tail_tol / (2.0 * static_cast<double>(k_atoms));
  std::size_t budget = opt.max_points;
  double tail = 0.0;
  for (std::size_t k = 0; k < k_atoms; ++k) {
    const std::size_t ia = order[k];
    const std::size_t ib = order[(k + 1) % k_atoms];
    // lift is continuous on (a, b) measured from atoms[ia].angle
    const double a = atoms[ia].angle;
    double b = a + (k_atoms == 1 ? kTwoPi : wrap_positive(pos[ib] - pos[ia]));
    const double mid = 0.5 * (a + b);
    const double tb = enumerate_branch(f, beta, mid, ib, b, +1, scale, tol_end, budget, visit);
    const double ta = enumerate_branch(f, beta, mid, ia, a, -1, scale, tol_end, budget, visit);
    if (opt.on_tail) {
      opt.on_tail(atoms[ib].angle, tb);
      opt.on_tail(atoms[ia].angle, ta);
    }
    tail += ta + tb;
  }
  return tail;
}

PreimageSet preimages_on_circle(const InnerFunction& f, Complex alpha, double tail_tol) {
  if (std::abs(std::abs(alpha) - 1.0) > kOnCircleTol) {
    throw Error(ErrorCode::TargetNotUnimodular, "target must lie on the unit circle");
  }
  PreimageSet out;
  out.target_angle = std::arg(alpha);
  std::vector<std::pair<double, double>> pts;
  PreimageOptions opt;
  opt.tail_tol = tail_tol;
  out.tail_mass = visit_preimages(f, out.target_angle, opt, [&](double t, double m) {
    pts.emplace_back(wrap_angle(t), m);
  });
  std::sort(pts.begin(), pts.end());
  out.points.reserve(pts.size());
  out.masses.reserve(pts.size());
  for (const auto& [t, m] : pts) {
    out.points.push_back(CirclePoint::from_angle(t));
    out.masses.push_back(m);
  }
  return out;
}

std::vector<double> preimages_in_interval(const InnerFunction& f, double target_angle, double lo,
                                          double hi, std::vector<double>* masses) {
  std::vector<double> out;
  if (!(hi > lo)) return out;
  const double beta = f.base_target(target_angle);
  const double scale = 1.0 / f.outer_factor(beta);
  const double plo = f.base_lift(lo), phi = f.base_lift(hi);
  // open interval: levels equal to an endpoint value up to rounding are dropped
  const double eps = 64.0 * 2.2e-16 * std::max({1.0, std::abs(plo), std::abs(phi)});
  long long n = static_cast<long long>(std::floor((plo - beta) / kTwoPi));
  double prev = lo;
  for (;; ++n) {
    const double level = beta + kTwoPi * static_cast<double>(n);
    if (level <= plo + eps) continue;
    if (level >= phi - eps) break;
    const double guess = prev + (level - f.base_lift(prev)) / f.base_derivative(prev);
    const double t = solve_base(f, level, prev, hi, guess);
    out.push_back(t);
    if (masses) masses->push_back(scale / f.base_derivative(t));
    prev = t;
  }
  return out;
}

std::vector<ArcSet::Interval> continuity_pieces(const InnerFunction& f, double lo, double hi,
                                                double exclusion) {
  std::vector<double> cuts;
  for (const auto& at : f.atoms()) {
    const double first = at.angle + kTwoPi * std::ceil((lo - exclusion - at.angle) / kTwoPi);
    for (double c = first; c <= hi + exclusion; c += kTwoPi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<ArcSet::Interval> out;
  double start = lo;
  for (double c : cuts) {
    const double stop = std::min(hi, c - exclusion);
    if (stop > start) out.push_back({start, stop});
    start = std::max(start, c + exclusion);
  }
  if (hi > start) out.push_back({start, hi});
  return out;
}

std::vector<double> preimages_in_arc(const InnerFunction& f, double target_angle, const Arc& arc,
                                     double exclusion, std::vector<double>* masses) {
  std::vector<double> out;
  for (const auto& p : continuity_pieces(f, arc.start(), arc.end(), exclusion)) {
    auto pts = preimages_in_interval(f, target_angle, p.lo, p.hi, masses);
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

ArcSet image_of_arcset(const InnerFunction& f, const ArcSet& e, double exclusion) {
  ArcSet out;
  std::vector<ArcSet::Interval> ranges;
  for (const auto& iv : e.intervals()) {
    for (const auto& at : f.atoms()) {
      const double a = wrap_positive(at.angle);
      if ((a >= iv.lo - exclusion && a <= iv.hi + exclusion) ||
          (iv.hi >= kTwoPi - exclusion && a <= exclusion)) {
        return ArcSet::full();
      }
    }
    if (iv.hi - iv.lo <= 0.0) continue;
    ranges.push_back({f.lift(iv.lo), f.lift(iv.hi)});
  }
  for (const auto& r : ranges) {
    if (r.hi - r.lo >= kTwoPi) return ArcSet::full();
  }
  out.add_ranges(ranges);
  return out;
}

ArcSet preimage_of_arcset(const InnerFunction& f, const ArcSet& v, const ArcSet& domain,
                          double exclusion) {
  if (v.is_full()) return domain;
  std::vector<ArcSet::Interval> ranges;
  for (const auto& dom : domain.intervals()) {
    for (const auto& p : continuity_pieces(f, dom.lo, dom.hi, exclusion)) {
      const double plo = f.lift(p.lo), phi = f.lift(p.hi);
      for (const auto& val : v.intervals()) {
        const long long n0 = static_cast<long long>(std::floor((plo - val.hi) / kTwoPi));
        const long long n1 = static_cast<long long>(std::ceil((phi - val.lo) / kTwoPi));
        for (long long n = n0; n <= n1; ++n) {
          const double lower = std::max(val.lo + kTwoPi * n, plo);
          const double upper = std::min(val.hi + kTwoPi * n, phi);
          if (!(upper > lower)) continue;
          const double t1 = lower == plo ? p.lo : solve_full(f, lower, p.lo, p.hi, 0.5 * (p.lo + p.hi));
          const double t2 = upper == phi ? p.hi : solve_full(f, upper, t1, p.hi, 0.5 * (t1 + p.hi));
          ranges.push_back({t1, t2});
        }
      }
    }
  }
  ArcSet out;
  out.add_ranges(ranges);
  return out;
}

double InvariantGroup::apply(std::size_t j, double t) const {
  if (grid.empty()) throw Error(ErrorCode::PreconditionFailed, "empty invariant group");
  // g_j(t) - t is periodic; interpolate it linearly on the grid
  const std::size_t m = grid.size();
  const double h = kTwoPi / static_cast<double>(m);
  const double u = wrap_positive(t - grid.front()) / h;
  const auto i = static_cast<std::size_t>(u) % m;
  const std::size_t i1 = (i + 1) % m;
  const double w = u - std::floor(u);
  const auto& row = table.at(j % order());
  const double d0 = row[i] - grid[i];
  const double d1 = row[i1] - grid[i1];
  return t + (1.0 - w) * d0 + w * d1;
}

double invariant_group_element(const InnerFunction& b, std::size_t j, double t) {
  const std::size_t d = b.degree();
  if (!b.is_finite_blaschke() || d == 0) {
    throw Error(ErrorCode::DegenerateDegree, "invariant group needs a finite Blaschke product of degree >= 1");
  }
  j %= d;
  if (j == 0) return t;
  const auto pts = preimages_in_interval(b, b.lift(t), t, t + kTwoPi);
  if (pts.size() != d - 1) throw Error(ErrorCode::NoConvergence, "preimage count mismatch");
  return pts[j - 1];
}

InvariantGroup invariant_group(const InnerFunction& b, std::size_t grid_size) {
  const std::size_t d = b.degree();
  if (!b.is_finite_blaschke() || d == 0) {
    throw Error(ErrorCode::DegenerateDegree, "invariant group needs a finite Blaschke product of degree >= 1");
  }
  InvariantGroup g;
  g.grid.resize(grid_size);
  g.table.assign(d, std::vector<double>(grid_size));
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double t = -kPi + kTwoPi * static_cast<double>(i) / static_cast<double>(grid_size);
    g.grid[i] = t;
    g.table[0][i] = t;
    const auto pts = preimages_in_interval(b, b.lift(t), t, t + kTwoPi);
    if (pts.size() != d - 1) throw Error(ErrorCode::NoConvergence, "preimage count mismatch");
    for (std::size_t j = 1; j < d; ++j) g.table[j][i] = pts[j - 1];
  }
  return g;
}

LocalInvariant::LocalInvariant(const InnerFunction& f, double from, double to, double arc_radius)
    : f_(f), from_(from), to_(to), radius_(arc_radius) {
  if (f.distance_to_singular(from) <= 1e-8 || f.distance_to_singular(to) <= 1e-8) {
    throw Error(ErrorCode::SingularityTooClose, "local invariant endpoints meet the singular set");
  }
  const double d = f.lift(to) - f.lift(from);
  const double k = std::round(d / kTwoPi);
  if (std::abs(d - kTwoPi * k) > 1e-9 * std::max(1.0, std::abs(d))) {
    throw Error(ErrorCode::ValuesDisagree, "f(from) != f(to)");
  }
  offset_ = kTwoPi * k;
}

double LocalInvariant::solve_near(const InnerFunction& f, double level, double centre) {
  double lo = centre - kPi, hi = centre + kPi;
  for (const auto& at : f.atoms()) {
    const double off = angular_difference(centre, at.angle);  // in (-pi, pi]
    if (off > 0.0) hi = std::min(hi, centre + off - 1e-9);
    if (off <= 0.0) lo = std::max(lo, centre + off + 1e-9);
  }
  if (f.lift(lo) > level || f.lift(hi) < level) {
    throw Error(ErrorCode::NoPreimageInArc, "value not attained on the component");
  }
  return solve_full(f, level, lo, hi, centre);
}

double LocalInvariant::operator()(double t) const {
  return solve_near(f_, f_.lift(t) + offset_, to_ + (t - from_));
}

double LocalInvariant::inverse(double t) const {
  return solve_near(f_, f_.lift(t) - offset_, from_ + (t - to_));
}

double LocalInvariant::derivative(double t) const {
  return f_.angular_derivative(t) / f_.angular_derivative((*this)(t));
}

Arc LocalInvariant::target_arc() const {
  return Arc::between((*this)(from_ - radius_), (*this)(from_ + radius_));
}

bool has_endpoint_structure(const InnerFunction& theta, const InnerFunction& phi, double tol) {
  try {
    return std::abs(theta.boundary_value(0.0) - theta.boundary_value(kPi)) <= tol &&
           std::abs(phi.boundary_value(0.0) - phi.boundary_value(kPi)) <= tol;
  } catch (const Error&) {
    return false;
  }
}

EndpointLambda endpoint_lambda(const InnerFunction& theta, const InnerFunction& phi,
                               double arc_radius) {
  if (!has_endpoint_structure(theta, phi)) {
    throw Error(ErrorCode::EndpointValuesDisagree, "theta(1) != theta(-1) or phi(1) != phi(-1)");
  }
  const LocalInvariant tau(theta, 0.0, kPi, arc_radius);
  const LocalInvariant sigma(phi, kPi, 0.0, arc_radius);
  EndpointLambda out;
  out.lambda_prime_at_1 = sigma.derivative(tau(0.0)) * tau.derivative(0.0);
  // lambda~ = sigma^{-1} o tau^{-1} near -1
  const double s1 = tau.inverse(kPi);
  const double s2 = sigma.inverse(s1);
  out.tilde_prime_at_minus1 = (1.0 / tau.derivative(s1)) * (1.0 / sigma.derivative(s2));
  out.product_residual = std::abs(out.lambda_prime_at_1 * out.tilde_prime_at_minus1 - 1.0);
  out.lambda = [tau, sigma](double t) { return sigma(tau(t)); };
  out.lambda_derivative = [tau, sigma](double t) {
    return sigma.derivative(tau(t)) * tau.derivative(t);
  };
  return out;
}

bool atoms_on_split_points(const InnerFunction& theta, const InnerFunction& phi, double tol) {
  for (const auto* f : {&theta, &phi}) {
    if (f->distance_to_singular(0.0) < tol || f->distance_to_singular(kPi) < tol) return true;
  }
  return false;
}

namespace {

void require_split_points_regular(const InnerFunction& theta, const InnerFunction& phi) {
  if (atoms_on_split_points(theta, phi)) {
    throw Error(ErrorCode::SingularityTooClose,
                "a singular atom sits at +1 or -1; precompose with a disk automorphism that moves it off "
                "the real axis first");
  }
}

}  // namespace

double dynamics_step(const InnerFunction& theta, const InnerFunction& phi, double t) {
  require_split_points_regular(theta, phi);
  const auto eta = preimages_in_arc(phi, phi.lift(t), Arc::lower_half(), 0.0);
  if (eta.empty()) throw Error(ErrorCode::NoPreimageInArc, "phi value not attained on T-");
  if (eta.size() > 1) throw Error(ErrorCode::PreconditionFailed, "phi is not univalent on T-");
  const auto zeta = preimages_in_arc(theta, theta.lift(eta.front()), Arc::upper_half(), 0.0);
  if (zeta.empty()) throw Error(ErrorCode::NoPreimageInArc, "theta value not attained on T+");
  if (zeta.size() > 1) throw Error(ErrorCode::PreconditionFailed, "theta is not univalent on T+");
  return zeta.front();
}

std::vector<double> forward_images(const InnerFunction& theta, const InnerFunction& phi, double t,
                                   double exclusion) {
  require_split_points_regular(theta, phi);
  std::vector<double> out;
  for (double eta : preimages_in_arc(phi, phi.lift(t), Arc::lower_half(), exclusion)) {
    for (double z : preimages_in_arc(theta, theta.lift(eta), Arc::upper_half(), exclusion)) {
      out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace innerlab
