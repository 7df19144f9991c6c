#include "innerlab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "innerlab/boundary_maps.hpp"
#include "innerlab/error.hpp"
#include "parallel.hpp"

namespace innerlab {

namespace {

bool near_atom(const InnerFunction& f, const ArcSet& supp, double pad) {
  for (const auto& at : f.atoms()) {
    const double a = wrap_positive(at.angle);
    for (const auto& iv : supp.intervals()) {
      for (double shift : {0.0, kTwoPi, -kTwoPi}) {
        if (a + shift >= iv.lo - pad && a + shift <= iv.hi + pad) return true;
      }
    }
  }
  return false;
}

// |f'(zeta)| * sum over solutions eta of f(eta) = f(zeta) with eta in supp \ arc
// of g(eta) / |f'(eta)|.
double pullback_sum(const InnerFunction& f, const Arc& arc, const std::function<double(double)>& g,
                    const ArcSet& supp, double zeta, const TransferOptions& opt, double* leak) {
  if (supp.intervals().empty()) return 0.0;
  const double target = f.lift(zeta);
  const double ex = opt.endpoint_exclusion;
  auto excluded = [&](double t) {
    return angular_distance(t, arc.start()) < ex || angular_distance(t, arc.end()) < ex;
  };
  double sum = 0.0, lost = 0.0;
  auto take = [&](double t, double m) {
    if (arc.contains(t) || !supp.contains(wrap_positive(t))) return;
    if (excluded(t)) {
      lost += m;
      return;
    }
    sum += g(t) * m;
  };
  if (near_atom(f, supp, 1e-12)) {
    PreimageOptions po;
    po.tail_tol = opt.tail_tol;
    // the unenumerated mass sits next to the atom; g is read at the atom
    po.on_tail = [&](double a, double tail) {
      if (tail > 0.0 && supp.contains(wrap_positive(a)) && !arc.contains(a)) take(a, tail);
    };
    visit_preimages(f, target, po, take);
  } else {
    std::vector<double> masses;
    for (const auto& iv : supp.intervals()) {
      masses.clear();
      const auto pts = preimages_in_interval(f, target, iv.lo, iv.hi, &masses);
      for (std::size_t i = 0; i < pts.size(); ++i) take(pts[i], masses[i]);
    }
  }
  const double d = f.angular_derivative(zeta);
  if (leak) *leak += d * lost;
  return d * sum;
}

void require_admissible(const InnerFunction& f, const Arc& arc) {
  if (std::abs(f.eval(Complex(0.0, 0.0))) > 1e-8)
    throw Error(ErrorCode::PreconditionFailed, "transfer operators need f(0) = 0");
  double inc = 0.0;
  try {
    inc = arg_increase(f, arc);
  } catch (const Error&) {
    throw Error(ErrorCode::UnivalenceNotCertified, "singular atom on the univalence arc");
  }
  if (!(inc <= kTwoPi * (1.0 + 1e-9)))
    throw Error(ErrorCode::UnivalenceNotCertified, "argument increase exceeds 2pi on the arc");
}

void require_support(const Arc& arc, const BoundaryFunction& g) {
  const double tol = 1e-12 * std::max(1.0, g.max_abs());
  const double margin = 2.0 * g.step();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.node(i);
    if (!arc.contains(t) || std::abs(g.samples()[i]) <= tol) continue;
    if (angular_distance(t, arc.start()) > margin && angular_distance(t, arc.end()) > margin)
      throw Error(ErrorCode::SupportOverlap, "g does not vanish on the univalence arc");
  }
}

// Fills gaps shorter than min_gap; the preimage of a gap of length g under an
// inner function has measure at most g * P(f(0), .) so this bounds the error.
ArcSet close_gaps(const ArcSet& s, double min_gap) {
  const auto& iv = s.intervals();
  if (iv.size() < 2) return s;
  std::vector<ArcSet::Interval> out;
  out.push_back(iv.front());
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].lo - out.back().hi < min_gap)
      out.back().hi = std::max(out.back().hi, iv[i].hi);
    else
      out.push_back(iv[i]);
  }
  ArcSet r;
  r.add_ranges(out);
  return r;
}

ArcSet lower_set() { return ArcSet::from_arc(Arc::lower_half()); }
ArcSet upper_set() { return ArcSet::from_arc(Arc::upper_half()); }

}  // namespace

double transfer_at(const InnerFunction& f, const Arc& arc, const BoundaryFunction& g, double zeta,
                   const TransferOptions& opt, double* leak) {
  return pullback_sum(f, arc, [&g](double t) { return g(t); }, g.support(), zeta, opt, leak);
}

BoundaryFunction apply_T(const InnerFunction& f, const Arc& arc, const BoundaryFunction& g,
                         const TransferOptions& opt, double* leak) {
  require_admissible(f, arc);
  require_support(arc, g);
  const std::size_t m = opt.grid_size ? opt.grid_size : g.size();
  const ArcSet supp = g.support();
  const double step = arc.length() / static_cast<double>(m);
  std::vector<double> out(m, 0.0), lost(m, 0.0);
  detail::parallel_for(m, opt.workers, [&](std::size_t i) {
    const double t = arc.start() + (static_cast<double>(i) + 0.5) * step;
    out[i] = pullback_sum(f, arc, [&g](double s) { return g(s); }, supp, t, opt, &lost[i]);
  });
  if (leak) {
    for (double l : lost) *leak += l * step;
  }
  return BoundaryFunction(arc, std::move(out));
}

BoundaryFunction apply_transfer(const InnerFunction& theta, const InnerFunction& phi,
                                const BoundaryFunction& f, const TransferOptions& opt,
                                double* leak) {
  TransferOptions inner = opt;
  inner.grid_size = opt.grid_size ? opt.grid_size : f.size();
  const BoundaryFunction h = apply_T(phi, Arc::lower_half(), f, inner, leak);
  return apply_T(theta, Arc::upper_half(), h, inner, leak);
}

ArcSet lambda_set(const InnerFunction& theta, const InnerFunction& phi, const ArcSet& e,
                  double exclusion, double min_gap) {
  if (e.intervals().empty()) return ArcSet();
  const ArcSet a = preimage_of_arcset(theta, image_of_arcset(theta, e, exclusion), lower_set(),
                                      exclusion);
  const ArcSet b = close_gaps(image_of_arcset(phi, a, exclusion), min_gap);
  return preimage_of_arcset(phi, b, upper_set(), exclusion);
}

AdjointResidual adjoint_identity_residual(const InnerFunction& theta, const InnerFunction& phi,
                                          const BoundaryFunction& f, const ArcSet& e,
                                          const TransferOptions& opt) {
  AdjointResidual r{};
  const ArcSet lam = lambda_set(theta, phi, e);
  r.rhs = f.integral_over(lam);
  TransferOptions o = opt;
  o.grid_size = opt.grid_size ? opt.grid_size : f.size();
  r.lhs = apply_transfer(theta, phi, f, o).integral_over(e);
  o.grid_size = std::max<std::size_t>(o.grid_size / 2, 1);
  r.quadrature_bound = std::abs(r.lhs - apply_transfer(theta, phi, f, o).integral_over(e));
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double UlamOperator::cell_width() const noexcept { return kPi / static_cast<double>(n); }

double UlamOperator::midpoint(std::size_t i) const noexcept {
  return (static_cast<double>(i) + 0.5) * cell_width();
}

double UlamOperator::row_sum(std::size_t i) const {
  double s = 0.0;
  for (const auto& [j, w] : rows.at(i)) s += w;
  return s;
}

std::vector<double> UlamOperator::push(const std::vector<double>& v) const {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    for (const auto& [j, w] : rows[i]) out[j] += v[i] * w;
  }
  return out;
}

std::vector<double> UlamOperator::dense() const {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, w] : rows[i]) m[i * n + j] += w;
  return m;
}

UlamOperator ulam_matrix(const InnerFunction& theta, const InnerFunction& phi, std::size_t n,
                         std::size_t samples_per_cell, double exclusion, unsigned workers) {
  if (n == 0 || samples_per_cell == 0)
    throw Error(ErrorCode::ConfigInvalid, "Ulam grid and sample count must be positive");
  if (atoms_on_split_points(theta, phi)) {
    throw Error(ErrorCode::SingularityTooClose, "a singular atom sits at +1 or -1");
  }
  UlamOperator u;
  u.n = n;
  u.rows.resize(n);
  u.leak.assign(n, 0.0);
  const double h = u.cell_width();
  const double w = 1.0 / static_cast<double>(samples_per_cell);
  detail::parallel_for(n, workers, [&](std::size_t i) {
    std::map<std::size_t, double> row;
    double leak = 0.0;
    for (std::size_t k = 0; k < samples_per_cell; ++k) {
      const double t = (static_cast<double>(i) + (static_cast<double>(k) + 0.5) * w) * h;
      std::vector<double> imgs;
      try {
        imgs = forward_images(theta, phi, t, exclusion);
      } catch (const Error&) {
        imgs.clear();
      }
      if (imgs.empty()) leak += w;
      for (double s : imgs) {
        if (s < exclusion || s > kPi - exclusion) {
          leak += w;
          continue;
        }
        const auto j = std::min(n - 1, static_cast<std::size_t>(s / h));
        row[j] += w;
      }
    }
    u.rows[i].assign(row.begin(), row.end());
    u.leak[i] = std::min(leak, 1.0);
  });
  return u;
}

std::string InvariantDensity::to_csv() const {
  std::ostringstream os;
  os << "cell_midpoint_angle,density,residual\n";
  const double h = kPi / static_cast<double>(density.size());
  char buf[128];
  for (std::size_t i = 0; i < density.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", (i + 0.5) * h, density[i], residual);
    os << buf;
  }
  return os.str();
}

InvariantDensity invariant_density(const UlamOperator& u, std::size_t max_iterations, double tol) {
  InvariantDensity r{};
  const std::size_t n = u.n;
  std::vector<double> p(n, 1.0 / static_cast<double>(n));
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_at = 0;
  r.residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    std::vector<double> q = u.push(p);
    double g = 0.0;
    for (double x : q) g += x;
    r.iterations = it;
    r.growth = g;
    if (!(g > 0.0)) {
      r.residual = 1.0;
      p.assign(n, 0.0);
      break;
    }
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      q[i] /= g;
      res += std::abs(q[i] - p[i]);
    }
    p.swap(q);
    r.residual = res;
    if (res < tol) break;
    if (res < best * (1.0 - 1e-6)) {
      best = res;
      best_at = it;
    } else if (it - best_at >= 100) {
      break;
    }
  }
  r.leak_per_iterate = 0.0;
  for (std::size_t i = 0; i < n; ++i) r.leak_per_iterate += p[i] * u.leak[i];
  const double h = u.cell_width();
  r.density.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.density[i] = p[i] / h;
  return r;
}

std::vector<double> cesaro_sequence(const UlamOperator& u, const std::function<double(double)>& test_fn,
                                    std::size_t n_max) {
  const double h = u.cell_width();
  std::vector<double> test(u.n), v(u.n, h), out;
  for (std::size_t i = 0; i < u.n; ++i) test[i] = test_fn(u.midpoint(i));
  out.reserve(n_max);
  double acc = 0.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    double pair = 0.0;
    for (std::size_t i = 0; i < u.n; ++i) pair += v[i] * test[i];
    acc += pair;
    out.push_back(acc / static_cast<double>(k));
    if (k < n_max) v = u.push(v);
  }
  return out;
}

std::vector<double> cesaro_sequence(const InnerFunction& theta, const InnerFunction& phi,
                                    const std::function<double(double)>& test_fn, std::size_t n_max,
                                    std::size_t grid) {
  return cesaro_sequence(ulam_matrix(theta, phi, grid), test_fn, n_max);
}

std::string cesaro_csv(const std::vector<double>& averages) {
  std::ostringstream os;
  os << "N,average\n";
  char buf[64];
  for (std::size_t k = 0; k < averages.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k + 1, averages[k]);
    os << buf;
  }
  return os.str();
}

double endpoint_expansion_residual(const InnerFunction& theta, const InnerFunction& phi,
                                   const BoundaryFunction& f, double zeta,
                                   const TransferOptions& opt) {
  if (!has_endpoint_structure(theta, phi))
    throw Error(ErrorCode::EndpointStructureUnavailable, "theta or phi differ at 1 and -1");
  const ArcSet sf = f.support();
  if (sf.intervals().empty()) return 0.0;
  const ArcSet sh = preimage_of_arcset(phi, image_of_arcset(phi, sf, 1e-9), lower_set(), 1e-9);
  auto h = [&](double eta) { return transfer_at(phi, Arc::lower_half(), f, eta, opt); };
  const double tf = pullback_sum(theta, Arc::upper_half(), h, sh, zeta, opt, nullptr);
  const EndpointLambda el = endpoint_lambda(theta, phi);
  return std::abs(tf - el.lambda_derivative(zeta) * f(el.lambda(zeta)));
}

}  // namespace innerlab
