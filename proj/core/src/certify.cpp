#include "innerlab/certify.hpp"

#include <algorithm>
#include <cmath>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/error.hpp"

namespace innerlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEndpointGap = 1e-8;  // endpoints must be this far from atoms

// Smallest unwrapped atom position strictly after a (a + 2pi if none).
double first_atom_after(const InnerFunction& f, double a) {
  double best = a + kTwoPi;
  for (const auto& s : f.atoms()) {
    double x = s.angle + kTwoPi * std::ceil((a - s.angle) / kTwoPi);
    if (x <= a) x += kTwoPi;
    best = std::min(best, x);
  }
  return best;
}

// Largest unwrapped atom position strictly before x (x - 2pi if none).
double last_atom_before(const InnerFunction& f, double x) {
  double best = x - kTwoPi;
  for (const auto& s : f.atoms()) {
    double y = s.angle + kTwoPi * std::floor((x - s.angle) / kTwoPi);
    if (y >= x) y -= kTwoPi;
    best = std::max(best, y);
  }
  return best;
}

// Increase of arg f over [a, b]; the lift is continuous between atoms.
double increase(const InnerFunction& f, double a, double b) {
  if (b <= a) return 0.0;
  if (first_atom_after(f, a) <= b || f.distance_to_singular(a) < 1e-10) return kInf;
  return f.lift(b) - f.lift(a);
}

struct Split {
  double b;
  double margin_theta;
  double margin_phi;
  double margin() const { return std::min(margin_theta, margin_phi); }
};

// Best right endpoint b for I = (a, b): balances the theta margin on I
// against the phi margin on (b, a + 2pi).
Split best_split(const InnerFunction& theta, const InnerFunction& phi, double a) {
  Split none{a, -kInf, -kInf};
  if (theta.distance_to_singular(a) <= kEndpointGap || phi.distance_to_singular(a) <= kEndpointGap)
    return none;
  const double c = a + kTwoPi;
  const double hi = first_atom_after(theta, a) - kEndpointGap;
  const double lo = std::max(a, last_atom_before(phi, c)) + kEndpointGap;
  if (!(lo < hi)) return none;
  auto mt = [&](double b) { return kTwoPi - increase(theta, a, b); };
  auto mp = [&](double b) { return kTwoPi - increase(phi, b, c); };
  double l = lo, h = hi;
  if (mt(l) - mp(l) <= 0.0) {
    h = l;
  } else if (mt(h) - mp(h) >= 0.0) {
    l = h;
  } else {
    for (int it = 0; it < 200 && h - l > 1e-15 * std::max(1.0, std::abs(h)); ++it) {
      const double m = 0.5 * (l + h);
      (mt(m) - mp(m) > 0.0 ? l : h) = m;
    }
  }
  const double b = 0.5 * (l + h);
  return {b, mt(b), mp(b)};
}

}  // namespace

UnivalenceCheck univalent_on_arc(const InnerFunction& f, const Arc& arc) {
  if (f.arc_meets_singular(arc))
    return {false, -kInf, "singular atom inside the arc"};
  const double inc = increase(f, arc.start(), arc.end());
  if (!std::isfinite(inc)) return {false, -kInf, "singular atom at an endpoint"};
  const double margin = kTwoPi - inc;
  if (margin >= -kMarginSlack) return {true, margin, ""};
  return {false, margin, "argument increase exceeds 2pi"};
}

PartitionSearch find_partition_arc(const InnerFunction& theta, const InnerFunction& phi,
                                   std::size_t grid) {
  if (grid < 4) throw Error(ErrorCode::ConfigInvalid, "partition grid must have at least 4 points");
  PartitionSearch out;
  out.margin_map.resize(grid);
  const double step = kTwoPi / static_cast<double>(grid);
  std::size_t best_i = 0;
  Split best{0.0, -kInf, -kInf};
  for (std::size_t i = 0; i < grid; ++i) {
    const Split s = best_split(theta, phi, step * static_cast<double>(i));
    out.margin_map[i] = s.margin();
    if (s.margin() > best.margin()) {
      best = s;
      best_i = i;
    }
  }
  out.best_margin = best.margin();
  double a = step * static_cast<double>(best_i);
  if (std::isfinite(best.margin()) && best.margin() < -kMarginSlack) {
    // golden-section search on the left endpoint around the best grid cell
    constexpr double g = 0.6180339887498949;
    double l = a - step, h = a + step;
    double x1 = h - g * (h - l), x2 = l + g * (h - l);
    double f1 = best_split(theta, phi, x1).margin(), f2 = best_split(theta, phi, x2).margin();
    for (int it = 0; it < 90; ++it) {
      if (f1 < f2) {
        l = x1;
        x1 = x2;
        f1 = f2;
        x2 = l + g * (h - l);
        f2 = best_split(theta, phi, x2).margin();
      } else {
        h = x2;
        x2 = x1;
        f2 = f1;
        x1 = h - g * (h - l);
        f1 = best_split(theta, phi, x1).margin();
      }
    }
    const double ar = f1 > f2 ? x1 : x2;
    const Split r = best_split(theta, phi, ar);
    if (r.margin() > best.margin()) {
      best = r;
      a = ar;
      out.refined = true;
      out.best_margin = std::max(out.best_margin, r.margin());
    }
  }
  if (best.margin() >= -kMarginSlack) {
    out.arc = Arc::between(a, best.b);
    out.margin_theta = best.margin_theta;
    out.margin_phi = best.margin_phi;
  } else {
    out.refined = false;
  }
  return out;
}

std::vector<SymmetricArcMargin> symmetric_arc_scan(const InnerFunction& theta,
                                                   const InnerFunction& phi, std::size_t grid) {
  std::vector<SymmetricArcMargin> out;
  out.reserve(grid);
  for (std::size_t k = 1; k < grid; ++k) {
    const double a = kPi * static_cast<double>(k) / static_cast<double>(grid);
    out.push_back({a, kTwoPi - increase(theta, a, kTwoPi - a), kTwoPi - increase(phi, -a, a)});
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Complete: return "Complete";
    case Verdict::NotCertified: return "NotCertified";
    case Verdict::DegreeTooSmall: return "DegreeTooSmall";
  }
  return "?";
}

Certificate certify_pair(const InnerFunction& theta, const InnerFunction& phi, std::size_t grid) {
  Certificate c;
  c.note = "NotCertified does not imply incompleteness; the arc criterion is sufficient only.";
  auto degree_check = [&](const char* name, const InnerFunction& f) {
    const std::size_t d = f.degree();
    const double margin = d == kInfiniteDegree ? kInf : static_cast<double>(d) - 3.0;
    c.checks.push_back({name, margin >= 0.0, margin});
    return margin >= 0.0;
  };
  const bool deg_ok = degree_check("degree_theta", theta) & degree_check("degree_phi", phi);
  if (!deg_ok) {
    c.verdict = Verdict::DegreeTooSmall;
    return c;
  }
  const PartitionSearch ps = find_partition_arc(theta, phi, grid);
  c.checks.push_back({"partition_arc", ps.arc.has_value(), ps.best_margin});
  if (ps.refined) c.flags.push_back("arc_from_continuous_refinement");
  bool ok = ps.arc.has_value();
  if (ok) {
    const Arc& arc = *ps.arc;
    c.arc_found = arc;
    const auto ut = univalent_on_arc(theta, arc);
    const auto up = univalent_on_arc(phi, arc.complement());
    c.checks.push_back({"theta_univalent_on_arc", ut.univalent, ut.margin});
    c.checks.push_back({"phi_univalent_on_complement", up.univalent, up.margin});
    double dist = kInf;
    for (double e : {arc.start(), arc.end()})
      dist = std::min({dist, theta.distance_to_singular(e), phi.distance_to_singular(e)});
    const bool cont = dist > kEndpointGap;
    c.checks.push_back({"endpoint_continuity", cont, dist - kEndpointGap});
    ok = ut.univalent && up.univalent && cont;
    if (ok && std::abs(up.margin) <= kMarginSlack) {
      c.flags.push_back("phi_margin_zero");
      c.alternative_verdict = Verdict::NotCertified;
    }
  }
  c.verdict = ok ? Verdict::Complete : Verdict::NotCertified;
  if (has_endpoint_structure(theta, phi)) {
    try {
      c.lambda_prime_at_1 = endpoint_lambda(theta, phi).lambda_prime_at_1;
      if (std::abs(*c.lambda_prime_at_1 - 1.0) < 1e-6) c.flags.push_back("neutral_endpoint");
    } catch (const Error&) {
      c.flags.push_back("endpoint_lambda_unavailable");
    }
  }
  return c;
}

double neutral_derivative_report(const InnerFunction& theta, const InnerFunction& phi) {
  if (!has_endpoint_structure(theta, phi))
    throw Error(ErrorCode::EndpointStructureUnavailable, "theta or phi differ at 1 and -1");
  return endpoint_lambda(theta, phi).lambda_prime_at_1;
}

LogDivergence log_divergence_check(const std::function<double(double)>& h, double t0,
                                   std::size_t n) {
  if (!(t0 > 0.0) || n == 0) throw Error(ErrorCode::PreconditionFailed, "need t0 > 0 and N >= 1");
  if (std::abs(h(0.0)) > 1e-12) throw Error(ErrorCode::PreconditionFailed, "h(0) != 0");
  auto fd = [&](double e) { return h(e) / e; };
  const double eps = 1e-4 * std::min(1.0, t0);
  const double d0 = 2.0 * fd(0.5 * eps) - fd(eps);
  if (std::abs(d0 - 1.0) > 1e-6)
    throw Error(ErrorCode::WrongFixedPointDerivative, "h'(0) != 1");
  constexpr int kSamples = 256;
  double prev = h(0.0), a_coef = 0.0;
  for (int k = 1; k <= kSamples; ++k) {
    const double s = t0 * k / kSamples;
    const double v = h(s);
    if (!(v > prev)) throw Error(ErrorCode::NotIncreasing, "h is not increasing on [0, t0]");
    prev = v;
    a_coef = std::max(a_coef, (s - v) / (s * s));
  }
  LogDivergence r{};
  long j = static_cast<long>(std::ceil(1.0 / t0));
  long k = 1;
  if (a_coef > 0.0) {
    j = std::max(j, static_cast<long>(std::ceil(4.0 * a_coef + 1.0)));
    k = std::max(1L, static_cast<long>(std::ceil(4.0 * a_coef * j / (j - 4.0 * a_coef))));
  }
  r.j = j;
  r.k = k;
  r.bound_holds = true;
  double x = t0, s = 0.0;
  r.iterates.reserve(n);
  r.partial_sums.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    x = h(x);
    s += x;
    r.iterates.push_back(x);
    r.partial_sums.push_back(s);
    const double bound = 1.0 / (static_cast<double>(j) + static_cast<double>(i) * static_cast<double>(k));
    if (x < bound * (1.0 - 1e-12)) r.bound_holds = false;
  }
  // least squares S_N = C log N + D
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double lx = std::log(static_cast<double>(i)), y = r.partial_sums[i - 1];
    sx += lx;
    sy += y;
    sxx += lx * lx;
    sxy += lx * y;
  }
  const double m = static_cast<double>(n);
  const double den = m * sxx - sx * sx;
  r.fitted_c = den > 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  r.intercept = (sy - r.fitted_c * sx) / m;
  return r;
}

EndpointMap endpoint_map_h(const InnerFunction& theta, const InnerFunction& phi, double beta) {
  if (!has_endpoint_structure(theta, phi))
    throw Error(ErrorCode::EndpointStructureUnavailable, "theta or phi differ at 1 and -1");
  const EndpointLambda el = endpoint_lambda(theta, phi);
  EndpointMap m;
  auto lam = el.lambda;
  m.h = [lam](double t) { return wrap_angle(lam(t)); };
  m.dh = el.lambda_derivative;
  m.beta = beta;
  m.h_prime_at_0 = el.lambda_prime_at_1;
  m.neutral = std::abs(m.h_prime_at_0 - 1.0) < 1e-6;
  m.maps_into_itself = true;
  for (int k = 0; k < 64; ++k) {
    const double t = beta * k / 64.0;
    const double v = m.h(t);
    if (v < -1e-12 || v >= beta) m.maps_into_itself = false;
  }
  return m;
}

}  // namespace innerlab
