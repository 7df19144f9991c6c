#include <random>

#include "doctest.h"
#include "innerlab/certify.hpp"
#include "innerlab/error.hpp"
#include "innerlab/fixtures.hpp"
#include "innerlab/hup.hpp"
#include "test_support.hpp"

using namespace innerlab;

namespace {

IntervalSingularMeasure random_measure(std::mt19937_64& rng, int max_atoms = 5) {
  std::uniform_int_distribution<int> k(1, max_atoms);
  std::uniform_real_distribution<double> pos(-0.9, 0.9), mass(0.05, 1.0);
  std::vector<IntervalAtom> atoms;
  const int n = k(rng);
  for (int i = 0; i < n; ++i) atoms.push_back({pos(rng), mass(rng)});
  return IntervalSingularMeasure(atoms);
}

double phase_distance(Complex a, Complex b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("Cauchy transform examples") {
  const double beta = 0.7;
  const IntervalSingularMeasure point({{0.0, beta}});
  CHECK(std::abs(cauchy_transform(point, Complex(2.0, 0.0)) - Complex(beta / 2.0, 0.0)) < 1e-15);
  const IntervalSingularMeasure pair({{0.5, 0.5}, {-0.5, 0.5}});
  CHECK(cauchy_transform(pair, Complex(1.0, 0.0)).real() == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  try {
    (void)cauchy_transform(point, Complex(0.0, 0.0));
    FAIL("expected EvaluationAtAtom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvaluationAtAtom);
  }
}

TEST_CASE("criterion values and verdicts") {
  for (double beta : {0.3, 1.0, 2.5}) {
    const auto c = hup_criterion(IntervalSingularMeasure({{0.0, beta}}));
    CHECK(c.value == doctest::Approx(beta).epsilon(1e-15));
    CHECK(c.verdict == (beta <= 1.0 ? HupVerdict::SufficientHolds : HupVerdict::FailsAndNecessaryIfEven));
  }
  const auto even = hup_criterion(IntervalSingularMeasure({{0.5, 0.5}, {-0.5, 0.5}}));
  CHECK(even.value == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(even.verdict == HupVerdict::FailsAndNecessaryIfEven);

  const auto two = hup_criterion(IntervalSingularMeasure({{0.1, 0.3}, {-0.4, 0.2}}));
  CHECK(two.value == doctest::Approx(0.3 / 0.99 + 0.2 / 0.84).epsilon(1e-14));
  CHECK(two.value == doctest::Approx(0.5411).epsilon(1e-4));
  CHECK(two.verdict == HupVerdict::SufficientHolds);

  const auto odd = hup_criterion(IntervalSingularMeasure({{0.1, 1.0}, {-0.4, 0.5}}));
  CHECK(odd.value > 1.0);
  CHECK(odd.verdict == HupVerdict::FailsUndecided);
}

TEST_CASE("endpoint gap equals twice the criterion") {
  CHECK(endpoint_gap(IntervalSingularMeasure({{0.0, 0.8}})) == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(endpoint_gap(IntervalSingularMeasure({{0.5, 0.5}, {-0.5, 0.5}})) ==
        doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  std::mt19937_64 rng(0x4855501);
  for (int i = 0; i < 50; ++i) {
    const auto nu = random_measure(rng);
    CHECK(std::abs(endpoint_gap(nu) - 2.0 * hup_criterion(nu).value) < 1e-12 * std::max(1.0, endpoint_gap(nu)));
  }
}

TEST_CASE("necessity scan root for a point mass") {
  for (double beta : {1.5, 2.0, 5.0}) {
    const IntervalSingularMeasure nu({{0.0, beta}});
    CHECK(std::abs(necessity_scan(nu) - std::sqrt(beta - 1.0)) < 1e-8);
  }
  // even two-atom measure: the root satisfies the gap equation
  const IntervalSingularMeasure pair({{0.3, 0.8}, {-0.3, 0.8}});
  REQUIRE(hup_criterion(pair).value > 1.0);
  const double y = necessity_scan(pair);
  const Complex d = cauchy_transform(pair, Complex(1.0, y)) - cauchy_transform(pair, Complex(-1.0, y));
  CHECK(d.real() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(d.imag()) < 1e-12);
}

TEST_CASE("necessity scan errors") {
  try {
    (void)necessity_scan(IntervalSingularMeasure({{0.2, 0.2}, {-0.2, 0.2}}));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  try {
    (void)necessity_scan(IntervalSingularMeasure({{0.1, 2.0}, {-0.3, 0.5}}));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  try {
    (void)necessity_scan(IntervalSingularMeasure({{0.0, 5.0}}), 1.0);
    FAIL("expected NoRootInRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoRootInRange);
  }
}

TEST_CASE("antisymmetry of the transform of an even measure") {
  std::mt19937_64 rng(0x4855502);
  std::uniform_real_distribution<double> pos(0.05, 0.9), mass(0.05, 1.0), xr(-3.0, 3.0), yr(0.01, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double s = pos(rng), m = mass(rng);
    const IntervalSingularMeasure nu({{s, m}, {-s, m}, {0.0, mass(rng)}});
    REQUIRE(nu.is_even());
    const double x = xr(rng), y = yr(rng);
    const Complex lhs = cauchy_transform(nu, Complex(x, y));
    const Complex rhs = -std::conj(cauchy_transform(nu, Complex(-x, y)));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("transform decreases outside the support and decays") {
  std::mt19937_64 rng(0x4855503);
  for (int i = 0; i < 20; ++i) {
    const auto nu = random_measure(rng);
    double prev = cauchy_transform(nu, Complex(1.0, 0.0)).real();
    for (double t = 1.05; t < 50.0; t *= 1.1) {
      const double v = cauchy_transform(nu, Complex(t, 0.0)).real();
      CHECK(v < prev);
      CHECK(v > 0.0);
      CHECK(cauchy_transform_derivative(nu, t) < 0.0);
      prev = v;
    }
    CHECK(cauchy_transform(nu, Complex(1e8, 0.0)).real() < 1e-7);
    prev = cauchy_transform(nu, Complex(-1.0, 0.0)).real();
    for (double t = -1.05; t > -50.0; t *= 1.1) {
      const double v = cauchy_transform(nu, Complex(t, 0.0)).real();
      CHECK(v > prev);
      CHECK(v < 0.0);
      prev = v;
    }
  }
}

TEST_CASE("gap along vertical lines is real and tends to zero for even measures") {
  const IntervalSingularMeasure nu({{0.4, 0.6}, {-0.4, 0.6}, {0.0, 0.3}});
  double prev = endpoint_gap(nu);
  for (double y = 0.01; y < 1e4; y *= 1.5) {
    const Complex d = cauchy_transform(nu, Complex(1.0, y)) - cauchy_transform(nu, Complex(-1.0, y));
    CHECK(std::abs(d.imag()) < 1e-12 * std::max(1.0, std::abs(d)));
    CHECK(d.real() < prev);
    prev = d.real();
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("Cayley map and its inverse") {
  std::mt19937_64 rng(0x4855504);
  std::uniform_real_distribution<double> tr(-20.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double t = tr(rng);
    const Complex z = cayley(Complex(t, 0.0));
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
    CHECK(std::abs(inverse_cayley(z) - Complex(t, 0.0)) < 1e-12 * std::max(1.0, t * t));
  }
  CHECK(std::abs(cayley(Complex(0.0, 1.0))) < 1e-15);
}

TEST_CASE("Cayley pair of a point mass is an atomic pair") {
  const double beta = 0.8;
  const auto p = cayley_pair(IntervalSingularMeasure({{0.0, beta}}));
  REQUIRE(p.theta.atoms().size() == 1);
  REQUIRE(p.phi.atoms().size() == 1);
  CHECK(std::abs(p.theta.atoms()[0].angle) < 1e-15);
  CHECK(p.theta.atoms()[0].mass == doctest::Approx(kPi));
  CHECK(std::abs(std::abs(p.phi.atoms()[0].angle) - kPi) < 1e-14);
  CHECK(p.phi.atoms()[0].mass == doctest::Approx(kPi * beta));
  CHECK(p.phi.zeros().empty());
}

TEST_CASE("Cayley pair boundary values match the line functions") {
  std::mt19937_64 rng(0x4855505);
  for (int trial = 0; trial < 10; ++trial) {
    const auto nu = random_measure(rng, 4);
    const auto p = cayley_pair(nu);
    int checked = 0;
    for (int k = 0; k < 256; ++k) {
      const double th = -kPi + kTwoPi * (k + 0.5) / 256.0;
      const double t = inverse_cayley(std::polar(1.0, th)).real();
      bool near = std::abs(t) > 1e3;
      for (const auto& a : nu.atoms()) near |= std::abs(t - a.position) < 1e-2;
      if (near) continue;
      const Complex th_val = p.theta.boundary_value(th);
      const Complex ph_val = p.phi.boundary_value(th);
      CHECK(std::abs(std::abs(th_val) - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(ph_val) - 1.0) < 1e-10);
      const double tol = 1e-10 * std::max(1.0, t * t);
      CHECK(phase_distance(th_val, std::polar(1.0, kPi * t)) < tol);
      const double F = cauchy_transform(nu, Complex(t, 0.0)).real();
      CHECK(phase_distance(ph_val, std::polar(1.0, -kPi * F)) < 1e-9);
      ++checked;
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("Cayley pair with criterion at most one certifies") {
  const IntervalSingularMeasure nu({{0.1, 0.3}, {-0.4, 0.2}});
  REQUIRE(hup_criterion(nu).verdict == HupVerdict::SufficientHolds);
  const auto p = cayley_pair(nu);
  const auto c = certify_pair(p.theta, p.phi, 1024);
  CHECK(c.verdict == Verdict::Complete);
}

TEST_CASE("Fourier moments on the curve") {
  const double beta = 0.6;
  const IntervalSingularMeasure nu({{0.0, beta}});
  const auto curve = sample_curve(nu, 12.0, 400000);

  const auto zero = fourier_moment(curve, [](double) { return 0.0; }, 3, 2);
  CHECK(std::abs(zero.value) == 0.0);

  // density with respect to arc length: integral of f w is one
  auto weight = [&](double t) {
    const double d = cauchy_transform_derivative(nu, t);
    return std::sqrt(1.0 + d * d);
  };
  auto gauss = [](double t) { return std::exp(-0.5 * (t - 2.5) * (t - 2.5) / 0.09) / std::sqrt(2.0 * kPi * 0.09); };
  auto density = [&](double t) { return gauss(t) / weight(t); };
  const auto one = fourier_moment(curve, density, 0, 0);
  CHECK(std::abs(one.value - Complex(1.0, 0.0)) < 1e-8);
  CHECK(one.truncation_bound < 1e-12);

  // mu-hat(m, 0) against a direct Simpson rule on [0.3, 4.7]
  for (int m : {1, 2, 5}) {
    auto integrand = [&](double t) { return std::polar(gauss(t) * weight(t), -kPi * m * t); };
    const int n = 40000;
    const double a = 0.3, b = 4.7, h = (b - a) / n;
    Complex s = integrand(a) + integrand(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * integrand(a + i * h);
    s *= h / 3.0;
    const auto mom = fourier_moment(curve, gauss, m, 0);
    CHECK(std::abs(mom.value - s) < 1e-8);
  }
}

TEST_CASE("Cantor fixture and the absolute-continuity warning") {
  const auto c = fixtures::cantor(3, 1.0);
  REQUIRE(c.atoms().size() == 8);
  for (const auto& a : c.atoms()) {
    CHECK(a.mass == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(std::abs(a.position) < 0.5);
  }
  CHECK(c.total_mass() == doctest::Approx(1.0));
  CHECK(c.is_even());
  CHECK_FALSE(c.looks_absolutely_continuous());
  CHECK(fixtures::cantor(12, 1.0).looks_absolutely_continuous());
  CHECK(IntervalSingularMeasure({{0.1, 0.5}, {0.1 + 1e-6, 0.5}}).looks_absolutely_continuous());
}
