#include <random>

#include "doctest.h"
#include "innerlab/boundary_maps.hpp"
#include "innerlab/certify.hpp"
#include "innerlab/error.hpp"
#include "innerlab/fixtures.hpp"
#include "test_support.hpp"

using namespace innerlab;

namespace {

bool closed_form_admissible(double l1, double l2, double a) {
  const double t = std::tan(0.5 * a);
  return l1 / kPi <= t && t <= kPi / l2;
}

}  // namespace

TEST_CASE("univalence of monomials on arcs") {
  const auto z3 = InnerFunction::monomial(3);
  const auto u = univalent_on_arc(z3, Arc(0.4, kTwoPi / 3));
  CHECK(u.univalent);
  CHECK(std::abs(u.margin) < 1e-12);
  const auto v = univalent_on_arc(z3, Arc(0.4, kPi));
  CHECK_FALSE(v.univalent);
  CHECK(v.margin == doctest::Approx(-kPi));
}

TEST_CASE("univalence margin of a single atom in closed form") {
  for (double lam : {0.5, 1.0, kPi, 5.0}) {
    const auto f = fixtures::hmr_phi1(lam);
    for (double a : {0.3, 0.9, 1.5, 2.4}) {
      const Arc arc = Arc::between(a, kTwoPi - a);
      const auto u = univalent_on_arc(f, arc);
      const double expect = kTwoPi - 2.0 * lam / std::tan(0.5 * a);
      CHECK(u.margin == doctest::Approx(expect).epsilon(1e-12));
      CHECK(kTwoPi - arg_increase(f, arc) == doctest::Approx(expect).epsilon(1e-9));
      CHECK(u.univalent == (expect >= 0.0));
    }
    const auto inside = univalent_on_arc(f, Arc(-0.5, 1.0));
    CHECK_FALSE(inside.univalent);
    CHECK_FALSE(inside.reason.empty());
  }
}

TEST_CASE("margin decreases as the arc grows") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = testsupport::random_blaschke(rng, 2 + trial % 5);
    const double s = testsupport::random_angle(rng);
    double prev = 1e300;
    for (double len = 0.2; len < kTwoPi; len += 0.3) {
      const double m = univalent_on_arc(b, Arc(s, len)).margin;
      CHECK(m <= prev + 1e-12);
      prev = m;
    }
  }
}

TEST_CASE("partition arcs of HMR pairs") {
  struct Case {
    double l1, l2;
    bool found;
  };
  for (const auto& c : {Case{1, 1, true}, Case{kPi, kPi, true}, Case{1, kPi * kPi, true},
                        Case{0.5, 2, true}, Case{2 * kPi, 2 * kPi, false}, Case{4, 4, false}}) {
    const auto pair = fixtures::hmr_pair(c.l1, c.l2);
    const auto ps = find_partition_arc(pair.theta, pair.phi);
    REQUIRE(ps.arc.has_value() == c.found);
    if (ps.arc) {
      CHECK(univalent_on_arc(pair.theta, *ps.arc).univalent);
      CHECK(univalent_on_arc(pair.phi, ps.arc->complement()).univalent);
    } else {
      for (double m : ps.margin_map) CHECK(m < 0.0);
    }
    // symmetric endpoint family against the closed form, up to one cell
    const std::size_t grid = 2048;
    const double cell = kPi / grid;
    for (const auto& s : symmetric_arc_scan(pair.theta, pair.phi, grid)) {
      const bool got = s.margin_theta >= -kMarginSlack && s.margin_phi >= -kMarginSlack;
      if (got != closed_form_admissible(c.l1, c.l2, s.a)) {
        const double lo = 2.0 * std::atan(c.l1 / kPi), hi = 2.0 * std::atan(kPi / c.l2);
        CHECK(std::min(std::abs(s.a - lo), std::abs(s.a - hi)) <= cell);
      }
    }
  }
  const auto crit = fixtures::hmr_pair(kPi, kPi);
  const auto ps = find_partition_arc(crit.theta, crit.phi);
  REQUIRE(ps.arc);
  CHECK(std::abs(ps.margin_theta) < 1e-9);
  CHECK(ps.arc->start() == doctest::Approx(kPi / 2));
}

TEST_CASE("partition arcs of random Blaschke pairs are sound") {
  std::mt19937_64 rng(19);
  int found = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = testsupport::random_blaschke(rng, 3 + trial % 3, true, 0.6);
    const auto p = testsupport::random_blaschke(rng, 3 + trial % 2, true, 0.6);
    const auto ps = find_partition_arc(t, p, 512);
    if (!ps.arc) continue;
    ++found;
    CHECK(univalent_on_arc(t, *ps.arc).univalent);
    CHECK(univalent_on_arc(p, ps.arc->complement()).univalent);
  }
  const auto pair = fixtures::balanced_cubic_pair();
  CHECK(find_partition_arc(pair.theta, pair.phi).arc.has_value());
}

TEST_CASE("certificates") {
  const auto z2 = InnerFunction::monomial(2);
  CHECK(certify_pair(z2, z2).verdict == Verdict::DegreeTooSmall);
  CHECK(certify_pair(fixtures::hmr_pair(1, 1).theta, z2).verdict == Verdict::DegreeTooSmall);
  for (double l : {0.5, 1.0, kPi}) {
    const auto pair = fixtures::normalized_hmr_pair(l, l);
    const auto c = certify_pair(pair.theta, pair.phi);
    CHECK(c.verdict == Verdict::Complete);
    CHECK(c.arc_found.has_value());
    CHECK_FALSE(c.note.empty());
  }
  const auto crit = fixtures::normalized_hmr_pair(kPi, kPi);
  const auto cc = certify_pair(crit.theta, crit.phi);
  REQUIRE(cc.lambda_prime_at_1.has_value());
  CHECK(*cc.lambda_prime_at_1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cc.alternative_verdict == Verdict::NotCertified);
  const auto sup = fixtures::normalized_hmr_pair(2 * kPi, 2 * kPi);
  CHECK(certify_pair(sup.theta, sup.phi).verdict == Verdict::NotCertified);
  const auto cubic = fixtures::balanced_cubic_pair();
  CHECK(certify_pair(cubic.theta, cubic.phi).verdict == Verdict::Complete);
}

TEST_CASE("verdicts are stable under grid refinement") {
  for (double l1 : {0.7, 1.5, 2.5, 4.0}) {
    for (double l2 : {0.7, 2.0, 3.5}) {
      const auto pair = fixtures::hmr_pair(l1, l2);
      const auto a = find_partition_arc(pair.theta, pair.phi, 1024);
      const auto b = find_partition_arc(pair.theta, pair.phi, 2048);
      if (a.arc && a.best_margin > 2.0 * kTwoPi / 1024) CHECK(b.arc.has_value());
      CHECK(a.arc.has_value() == (l1 * l2 <= kPi * kPi));
    }
  }
}

TEST_CASE("neutral derivative report") {
  const auto z2 = InnerFunction::monomial(2);
  CHECK(neutral_derivative_report(z2, z2) == doctest::Approx(1.0));
  const auto sym = fixtures::balanced_cubic_pair();
  CHECK(neutral_derivative_report(sym.theta, sym.phi) == doctest::Approx(1.0).epsilon(1e-9));
  const auto asym = fixtures::asymmetric_cubic_pair();
  const double d = neutral_derivative_report(asym.theta, asym.phi);
  CHECK(d == doctest::Approx(0.5).epsilon(1e-8));
  const auto el = endpoint_lambda(asym.theta, asym.phi);
  const double h = 1e-5;
  CHECK((el.lambda(h) - el.lambda(-h)) / (2 * h) == doctest::Approx(d).epsilon(1e-6));
  const auto bad = fixtures::hmr_pair(1, 1);
  try {
    neutral_derivative_report(bad.theta, bad.phi);
    FAIL("expected EndpointStructureUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EndpointStructureUnavailable);
  }
}

TEST_CASE("log divergence of neutral iterates") {
  const auto r = log_divergence_check([](double t) { return t / (1 + t); }, 0.5, 20000);
  for (std::size_t n = 1; n <= 20000; n += 997) CHECK(r.iterates[n - 1] == doctest::Approx(0.5 / (1 + 0.5 * n)));
  CHECK(r.fitted_c > 0.0);
  CHECK(r.fitted_c == doctest::Approx(1.0).epsilon(0.05));
  CHECK(r.bound_holds);
  const auto q = log_divergence_check([](double t) { return t - t * t; }, 0.5, 20000);
  CHECK(q.bound_holds);
  CHECK(q.partial_sums.back() / std::log(20000.0) == doctest::Approx(1.0).epsilon(0.2));
  const auto id = log_divergence_check([](double t) { return t; }, 0.25, 100);
  CHECK(id.partial_sums.back() == doctest::Approx(25.0));
  CHECK(id.bound_holds);
  auto code = [](auto fn) {
    try {
      log_divergence_check(fn, 0.5, 10);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::PreconditionFailed;
  };
  CHECK(code([](double t) { return 0.5 * t; }) == ErrorCode::WrongFixedPointDerivative);
  CHECK(code([](double t) { return t - 3 * t * t; }) == ErrorCode::NotIncreasing);
}

TEST_CASE("endpoint map h") {
  const auto z2 = InnerFunction::monomial(2);
  const auto id = endpoint_map_h(z2, z2);
  for (double t : {0.0, 0.05, 0.2}) CHECK(id.h(t) == doctest::Approx(t).epsilon(1e-12));
  CHECK(id.neutral);
  const auto crit = fixtures::normalized_hmr_pair(kPi, kPi);
  const auto m = endpoint_map_h(crit.theta, crit.phi, 0.1);
  CHECK(std::abs(m.h_prime_at_0 - 1.0) < 1e-6);
  CHECK(m.neutral);
  CHECK(std::abs(m.h(0.0)) < 1e-12);
  CHECK(m.maps_into_itself);
  // chain rule for iterates against a finite difference
  for (double t : {0.02, 0.05}) {
    double x = t, dprod = 1.0;
    for (int j = 0; j < 3; ++j) {
      dprod *= m.dh(x);
      x = m.h(x);
    }
    auto iter = [&](double s) {
      for (int j = 0; j < 3; ++j) s = m.h(s);
      return s;
    };
    const double e = 1e-5;
    CHECK(std::abs((iter(t + e) - iter(t - e)) / (2 * e) - dprod) < 1e-6);
  }
  const auto asym = fixtures::asymmetric_cubic_pair();
  CHECK_FALSE(endpoint_map_h(asym.theta, asym.phi).neutral);
}
