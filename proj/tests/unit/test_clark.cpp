#include <random>

#include "doctest.h"
#include "innerlab/clark.hpp"
#include "innerlab/fixtures.hpp"
#include "test_support.hpp"

using namespace innerlab;

TEST_CASE("clark measures of monomials") {
  for (int d = 1; d <= 6; ++d) {
    const auto m = clark_measure(InnerFunction::monomial(d), std::polar(1.0, 0.3 * d));
    REQUIRE(m.size() == static_cast<std::size_t>(d));
    for (double x : m.masses) CHECK(x == doctest::Approx(1.0 / d));
  }
  const auto m2 = clark_measure(InnerFunction::monomial(2), 1.0);
  CHECK(m2.integrate([](double t) { return std::cos(t); }) == doctest::Approx(0.0));
}

TEST_CASE("single atom clark measure") {
  const auto f = fixtures::hmr_phi1(kPi);
  const auto m = clark_measure(f, 1.0, 1e-6);
  for (std::size_t k = 0; k < m.size(); k += 501) {
    const double t = m.points[k].angle;
    CHECK(m.masses[k] == doctest::Approx(2.0 * std::sin(t / 2) * std::sin(t / 2) / kPi).epsilon(1e-9));
  }
  CHECK(std::abs(m.total() - expected_clark_mass(f, 1.0)) < 1e-8);
  CHECK(m.tail_mass < 1e-6);
}

TEST_CASE("poisson identity") {
  CHECK(poisson_identity_residual(InnerFunction::monomial(3), std::polar(1.0, 0.2), 0.0) < 1e-14);
  CHECK(poisson_identity_residual(InnerFunction::monomial(2), 1.0, 0.3) < 1e-10);
  CHECK(poisson_identity_residual(fixtures::hmr_phi1(1.0), 1.0, Complex(0, 0.5), 1e-8) < 1e-6);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto b = testsupport::random_blaschke(rng, 2 + i % 6, i % 2 == 0);
    const Complex z = testsupport::random_disk_point(rng, 0.95);
    CHECK(poisson_identity_residual(b, std::polar(1.0, testsupport::random_angle(rng)), z) < 1e-9);
  }
}

TEST_CASE("projection") {
  const auto z2 = InnerFunction::monomial(2);
  const Arc circle = Arc::full_circle();
  const auto one = project(z2, BoundaryFunction::constant(circle, 128, 1.0));
  for (double v : one.samples()) CHECK(v == doctest::Approx(1.0));
  const auto c1 = project(z2, BoundaryFunction::sample(circle, 128, [](double t) { return std::cos(t); }));
  CHECK(c1.max_abs() < 1e-12);
  const auto c2g = BoundaryFunction::sample(circle, 128, [](double t) { return std::cos(2 * t); });
  const auto c2 = project(z2, c2g);
  for (std::size_t i = 0; i < c2.size(); ++i) CHECK(std::abs(c2.samples()[i] - c2g.samples()[i]) < 1e-3);

  const auto b = fixtures::blaschke_random(3, 42);
  const auto g = BoundaryFunction::sample(circle, 256, [](double t) { return std::sin(t) + 0.3 * std::cos(3 * t); });
  const auto p1 = project(b, g);
  const auto p2 = project(b, p1);
  // grid version: limited by linear interpolation of P g
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(std::abs(p1.samples()[i] - p2.samples()[i]) < 2e-2);
  auto gf = [](double t) { return std::sin(t) + 0.3 * std::cos(3 * t); };
  const auto pf = projection(b, gf, 1.3);
  const auto ppf = projection(b, pf, 1.3);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const double t = testsupport::random_angle(rng);
    CHECK(std::abs(pf(t) - ppf(t)) < 1e-7);
  }
}

TEST_CASE("projection constant on orbits for smooth g") {
  const auto b = fixtures::blaschke_random(3, 7);
  const auto g = [](double t) { return std::sin(t) + std::cos(2 * t); };
  for (double t : {0.3, 1.7, -2.2}) {
    const double alpha = b.lift(t);
    const double v = integrate_clark(b, alpha, g, 2.0).value;
    for (const auto& p : clark_measure(b, std::polar(1.0, alpha)).points) {
      CHECK(integrate_clark(b, b.lift(p.angle), g, 2.0).value == doctest::Approx(v).epsilon(1e-7));
    }
  }
}

TEST_CASE("disintegration") {
  const auto z2 = InnerFunction::monomial(2);
  CHECK(disintegration_residual(z2, [](double) { return 1.0; }, 64).residual < 1e-14);
  CHECK(disintegration_residual(z2, [](double t) { return std::cos(t); }, 64).residual < 1e-10);
  const auto b = InnerFunction::blaschke({0.0, 0.4, Complex(0, -0.2)});
  auto g = [](double t) { return 1.0 + std::cos(t) - 0.5 * std::sin(2 * t) + 0.25 * std::cos(3 * t); };
  const auto r = disintegration_residual(b, g, 4096);
  CHECK(r.residual < 1e-6);
  CHECK(r.rhs == doctest::Approx(1.0));
}

TEST_CASE("properties: mass conservation, carrier, continuity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const auto b = testsupport::random_blaschke(rng, 2 + trial, true);
    for (int i = 0; i < 100; ++i) {
      const Complex alpha = std::polar(1.0, testsupport::random_angle(rng));
      const auto m = clark_measure(b, alpha);
      CHECK(std::abs(m.total() - 1.0) < 1e-8);
      for (const auto& p : m.points) CHECK(std::abs(b.boundary_value(p.angle) - alpha) < 1e-9);
    }
  }
  // modulus of continuity of alpha -> int g dmu_alpha shrinks with the grid
  const auto b = fixtures::blaschke_random(4, 5);
  auto g = [](double t) { return std::cos(t) + std::sin(2 * t); };
  auto modulus = [&](int n) {
    double worst = 0.0, prev = integrate_clark(b, -kPi, g, 2.0).value;
    for (int i = 1; i <= n; ++i) {
      const double v = integrate_clark(b, -kPi + kTwoPi * i / n, g, 2.0).value;
      worst = std::max(worst, std::abs(v - prev));
      prev = v;
    }
    return worst;
  };
  const double m512 = modulus(512), m1024 = modulus(1024);
  CHECK(m1024 <= 2.0 * m512);
  CHECK(m1024 >= 0.125 * m512);
}

TEST_CASE("support of singular clark measures grows as the tolerance shrinks") {
  const auto f = fixtures::hmr_phi1(1.0).normalize_to_zero();
  std::size_t prev = 0;
  for (double tol : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto m = clark_measure(f, std::polar(1.0, 0.4), tol);
    CHECK(m.size() > prev);
    CHECK(std::abs(m.total() - 1.0) < tol);
    prev = m.size();
  }
}

TEST_CASE("csv rows") {
  const std::string csv = clark_csv(InnerFunction::monomial(2), {0.0, 1.0}, 1e-8);
  CHECK(csv.rfind("alpha_angle,atom_angle,mass,tail\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
