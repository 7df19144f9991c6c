#include "innerlab/fixtures.hpp"

#include <array>
#include <cmath>
#include <random>

#include "innerlab/error.hpp"

namespace innerlab::fixtures {

InnerFunction hmr_phi1(double lambda1) { return InnerFunction::single_atom(0.0, lambda1); }

InnerFunction hmr_phi2(double lambda2) { return InnerFunction::single_atom(kPi, lambda2); }

InnerPair hmr_pair(double lambda1, double lambda2) {
  return {hmr_phi1(lambda1), hmr_phi2(lambda2)};
}

double hmr_balanced_endpoint(double lambda1, double lambda2) {
  return 2.0 * std::atan(std::sqrt(lambda1 / lambda2));
}

InnerPair normalized_hmr_pair(double lambda1, double lambda2) {
  const double a = hmr_balanced_endpoint(lambda1, lambda2);
  const auto w = DiskAutomorphism::from_three_points(std::polar(1.0, a), -1.0, std::polar(1.0, -a));
  return {hmr_phi1(lambda1).precompose(w).normalize_to_zero(),
          hmr_phi2(lambda2).precompose(w).normalize_to_zero()};
}

InnerFunction blaschke_random(int degree, std::uint64_t seed, double max_radius) {
  if (degree < 1) throw Error(ErrorCode::ConfigInvalid, "degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> zeros{0.0};
  for (int k = 1; k < degree; ++k) {
    zeros.push_back(std::polar(max_radius * std::sqrt(u(rng)), kTwoPi * u(rng)));
  }
  return InnerFunction::blaschke(std::move(zeros));
}

InnerFunction balanced_cubic() {
  const Complex a(0.0, -(std::sqrt(2.0) - 1.0));
  return InnerFunction::blaschke({0.0, a, a});
}

namespace {

InnerFunction mirror(const InnerFunction& f) {
  std::vector<Complex> z;
  for (const auto& a : f.zeros()) z.push_back(std::conj(a));
  std::vector<SingularAtom> s;
  for (const auto& at : f.atoms()) s.push_back({-at.angle, at.mass});
  return InnerFunction(std::move(z), std::move(s), -f.front_angle());
}

// Increase of t - 2 Arg(1 - conj(a) e^{it}) over (0, pi), and P(+-1, a).
double upper_increase(Complex a) {
  auto lift = [&](double t) { return t - 2.0 * std::arg(1.0 - std::conj(a) * std::polar(1.0, t)); };
  return lift(kPi) - lift(0.0);
}

double poisson_at(Complex zeta, Complex a) { return (1.0 - std::norm(a)) / std::norm(zeta - a); }

}  // namespace

InnerPair balanced_cubic_pair() {
  const InnerFunction t = balanced_cubic();
  return {t, mirror(t)};
}

InnerPair asymmetric_cubic_pair() {
  // zeros 0, a = x1 + i y1, b = 0.2 + i y2 with
  //   increase on T+ = 2pi, |theta'(1)| = 2, |theta'(-1)| = 4
  constexpr double x2 = 0.2;
  std::array<double, 3> v{-0.54, -0.2, -0.54};
  auto residual = [&](const std::array<double, 3>& p) {
    const Complex a(p[0], p[1]), b(x2, p[2]);
    return std::array<double, 3>{upper_increase(a) + upper_increase(b) - kPi,
                                 poisson_at(1.0, a) + poisson_at(1.0, b) - 1.0,
                                 poisson_at(-1.0, a) + poisson_at(-1.0, b) - 3.0};
  };
  for (int it = 0; it < 50; ++it) {
    const auto r = residual(v);
    if (std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]) < 1e-15) break;
    double jac[3][3];
    for (int j = 0; j < 3; ++j) {
      auto p = v;
      const double h = 1e-7;
      p[j] += h;
      const auto rp = residual(p);
      for (int i = 0; i < 3; ++i) jac[i][j] = (rp[i] - r[i]) / h;
    }
    // Cramer's rule for the 3x3 Newton step
    auto det = [](double m[3][3]) {
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double d = det(jac);
    std::array<double, 3> step{};
    for (int j = 0; j < 3; ++j) {
      double m[3][3];
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) m[i][k] = k == j ? r[i] : jac[i][k];
      step[j] = det(m) / d;
    }
    for (int j = 0; j < 3; ++j) v[j] -= step[j];
  }
  const InnerFunction theta = InnerFunction::blaschke({0.0, Complex(v[0], v[1]), Complex(x2, v[2])});
  return {theta, mirror(balanced_cubic())};
}

InnerFunction univalent_quartic() {
  return InnerFunction::blaschke({0.0, Complex(0.0, -0.55), Complex(0.45, -0.6), Complex(-0.35, -0.65)});
}

IntervalSingularMeasure cantor(int depth, double total_mass) {
  if (depth < 0 || depth > 24) throw Error(ErrorCode::ConfigInvalid, "cantor depth must be in [0, 24]");
  if (!(total_mass > 0.0)) throw Error(ErrorCode::ConfigInvalid, "cantor mass must be positive");
  // interval centres of the depth-th middle-thirds stage on [0, 1]
  std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::pair<double, double>> next;
    for (const auto& [lo, hi] : iv) {
      const double third = (hi - lo) / 3.0;
      next.emplace_back(lo, lo + third);
      next.emplace_back(hi - third, hi);
    }
    iv.swap(next);
  }
  std::vector<IntervalAtom> atoms;
  const double m = total_mass / static_cast<double>(iv.size());
  for (const auto& [lo, hi] : iv) atoms.push_back({0.5 * (lo + hi) - 0.5, m});
  return IntervalSingularMeasure(std::move(atoms));
}

}  // namespace innerlab::fixtures
