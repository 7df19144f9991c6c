#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "innerlab/boundary_maps.hpp"
#include "innerlab/counting.hpp"
#include "innerlab/error.hpp"
#include "innerlab/fixtures.hpp"
#include "test_support.hpp"

using namespace innerlab;

namespace {

// roots through eigenvalues of the companion matrix
std::vector<Complex> companion_roots(const Polynomial& p) {
  const auto& c = p.coeffs();
  const int n = p.degree();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

TEST_CASE("nevanlinna of monomials") {
  CHECK(nevanlinna(InnerFunction::monomial(2), 0.25) == doctest::Approx(std::log(4.0)));
  for (int d = 1; d <= 7; ++d)
    for (double r : {0.1, 0.5, 0.9})
      CHECK(nevanlinna(InnerFunction::monomial(d), r) == doctest::Approx(-std::log(r)).epsilon(1e-10));
  CHECK(littlewood_gap(InnerFunction::monomial(2), 0.25) == doctest::Approx(0.0));
  CHECK_THROWS_AS(nevanlinna(InnerFunction::monomial(3), 0.0), Error);
  try {
    nevanlinna(InnerFunction::monomial(3), 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetEqualsCenterValue);
  }
}

TEST_CASE("interior preimages against companion matrix") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = testsupport::random_blaschke(rng, 4, trial % 2 == 0);
    const Complex z(0.3, 0.2);
    const auto set = interior_preimages(b, z);
    CHECK(set.total_multiplicity() == 4);
    double n_oracle = 0.0;
    const auto oracle = companion_roots(blaschke_equation(b, z));
    for (Complex w : oracle) {
      n_oracle += -std::log(std::abs(w));
      double best = 1e300;
      for (const auto& p : set.points) best = std::min(best, std::abs(p.point - w));
      CHECK(best < 1e-9);
    }
    for (const auto& p : set.points) CHECK(std::abs(b.eval(p.point) - z) < 1e-9);
    CHECK(nevanlinna(b, z) == doctest::Approx(n_oracle).epsilon(1e-10));
  }
}

TEST_CASE("multiplicities are clustered") {
  const auto set = interior_preimages(InnerFunction::blaschke({0.3, 0.3, -0.2}), 0.0);
  REQUIRE(set.points.size() == 2);
  CHECK(set.total_multiplicity() == 3);
}

TEST_CASE("littlewood equality for finite blaschke") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto b = testsupport::random_blaschke(rng, 2 + trial % 5, false);
    const Complex f0 = b.eval(0.0);
    for (int k = 0; k < 30; ++k) {
      const Complex z = testsupport::random_disk_point(rng, 0.95);
      if (std::abs(z - f0) < 1e-3) continue;
      const double n = nevanlinna(b, z);
      CHECK(n >= 0.0);
      CHECK(std::abs(littlewood_gap(b, z)) < 1e-8);
    }
  }
}

TEST_CASE("littlewood inequality is strict for a polynomial self-map") {
  // p(w) = 0.1 + 0.4 w + 0.3 w^3, sup on the disk 0.8
  const Polynomial p(std::vector<Complex>{0.1, 0.4, 0.0, 0.3});
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Complex z = testsupport::random_disk_point(rng, 0.95);
    const double n = nevanlinna_polynomial(p, z);
    CHECK(n >= 0.0);
    CHECK(littlewood_rhs(p(0.0), z) - n > 0.0);
  }
}

TEST_CASE("generalized counting basics") {
  const auto z2 = InnerFunction::monomial(2);
  CHECK(generalized_counting(z2, log_weight(), 0.5) == doctest::Approx(-std::log(0.5)));
  CHECK(generalized_counting(z2, zero_weight(), 0.5) == 0.0);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = testsupport::random_blaschke(rng, 3, trial % 2 == 0);
    const Complex z = testsupport::random_disk_point(rng, 0.9);
    if (std::abs(b.eval(z) - b.eval(0.0)) < 1e-3) continue;
    const double lhs = generalized_counting(b, log_weight(), z) - std::log(std::abs(z));
    CHECK(lhs == doctest::Approx(nevanlinna(b, b.eval(z))).epsilon(1e-8));
    CHECK(interior_orbit(b, z).size() == 2);
  }
}

TEST_CASE("singular atom orbit") {
  const auto f = fixtures::hmr_phi1(kPi);
  const Complex z(0.1, 0.3);
  const auto orbit = interior_orbit(f, z, 1e-8);
  CHECK(orbit.size() > 10);
  for (std::size_t k = 0; k < orbit.size(); k += 97)
    CHECK(std::abs(f.eval(orbit[k]) - f.eval(z)) < 1e-9);
  const double lhs = generalized_counting(f, log_weight(), z) - std::log(std::abs(z));
  CHECK(std::abs(lhs - nevanlinna(f, f.eval(z))) < 1e-6);
  CHECK(std::abs(lhs - littlewood_rhs(f.eval(0.0), f.eval(z))) < 1e-6);
}

TEST_CASE("boundary limit of counting functions") {
  const auto theta = fixtures::univalent_quartic();
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  for (double zeta : {0.7, 1.6, 2.4}) {
    const auto zero = boundary_limit_residual(theta, zero_weight(), zeta, deltas);
    for (double r : zero) CHECK(r == 0.0);
    for (const auto& u : {log_weight(), poisson_weight(1.2)}) {
      const auto res = boundary_limit_residual(theta, u, zeta, deltas);
      CHECK(res[2] < 1e-3);
      CHECK(res[2] < res[1]);
      CHECK(res[1] < res[0]);
    }
    const auto ratio = radial_log_ratio(theta, zeta, deltas);
    const double d = theta.angular_derivative(zeta);
    CHECK(std::abs(ratio[2] - d) < std::abs(ratio[0] - d));
    CHECK(std::abs(ratio[2] - d) < 1e-3 * d);
  }
}

TEST_CASE("log equivalence on the upper half disk") {
  const auto theta = fixtures::univalent_quartic();
  const auto b = log_equiv_bounds(theta, 4000, 3);
  CHECK(b.c_low > 0.0);
  CHECK(std::isfinite(b.c_high));
  CHECK(b.c_low <= b.c_high);
  const auto cubic = fixtures::balanced_cubic();
  const auto bc = log_equiv_bounds(cubic, 4000, 4);
  CHECK(bc.c_low > 0.0);
  CHECK(std::isfinite(bc.c_high));
  try {
    log_equiv_bounds(InnerFunction::monomial(3), 10);
    FAIL("expected UnivalenceNotCertified");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnivalenceNotCertified);
  }
  // near the origin the ratio stays bounded
  for (double r : {1e-2, 1e-4, 1e-6}) {
    const Complex z = std::polar(r, 1.0);
    const double q = std::log(std::abs(theta.eval(z))) / std::log(r);
    CHECK(q > 0.5);
    CHECK(q < 2.0);
  }
}

TEST_CASE("growth bound and mean value property") {
  const auto theta = fixtures::univalent_quartic();
  const double c = counting_growth_constant(theta, poisson_weight(1.0), 2000, 8);
  CHECK(std::isfinite(c));
  CHECK(c > 0.0);
  for (Complex z : {Complex(0.2, 0.5), Complex(-0.4, 0.3), Complex(0.6, 0.6)}) {
    const double scale = std::max(1.0, generalized_counting(theta, log_weight(), z));
    CHECK(mean_value_defect(theta, log_weight(), z) < 1e-4 * scale);
  }
}

TEST_CASE("counting csv") {
  const auto csv = counting_csv(InnerFunction::monomial(2), {Complex(0.25, 0.0)});
  CHECK(csv.rfind("z_re,z_im,N,littlewood_rhs,gap\n", 0) == 0);
  CHECK(csv.find("0.25,0,") != std::string::npos);
}
