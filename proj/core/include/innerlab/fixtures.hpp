#pragma once

#include <cstdint>
#include <string>

#include "innerlab/hup.hpp"
#include "innerlab/inner_function.hpp"

namespace innerlab {

struct InnerPair {
  InnerFunction theta;
  InnerFunction phi;
};

namespace fixtures {

/// exp(lambda (z+1)/(z-1)): one atom of mass lambda at 1.
InnerFunction hmr_phi1(double lambda1);
/// exp(lambda (z-1)/(z+1)): one atom of mass lambda at -1.
InnerFunction hmr_phi2(double lambda2);
InnerPair hmr_pair(double lambda1, double lambda2);

/// Endpoint a with tan(a/2) = sqrt(lambda1/lambda2).
double hmr_balanced_endpoint(double lambda1, double lambda2);
/// (phi1 o W, phi2 o W) normalized to vanish at 0, where W maps T+ onto
/// (a, 2pi - a) at the balanced endpoint.
InnerPair normalized_hmr_pair(double lambda1, double lambda2);

/// Degree d product with a zero at 0 and d-1 seeded zeros.
InnerFunction blaschke_random(int degree, std::uint64_t seed, double max_radius = 0.9);

/// z * omega_{-iy}^2 with y = sqrt(2) - 1: arg increases by exactly 2pi on T+.
InnerFunction balanced_cubic();
/// (balanced_cubic, its mirror conj(theta(conj z))).
InnerPair balanced_cubic_pair();
/// Cubic with theta(1) = theta(-1), |theta'(1)| = 2, |theta'(-1)| = 4, paired
/// with the mirror of balanced_cubic.
InnerPair asymmetric_cubic_pair();
/// Degree 4, theta(0) = 0, univalent on T+ with positive margin.
InnerFunction univalent_quartic();

/// Middle-thirds Cantor approximant scaled to [-1/2, 1/2], 2^depth atoms.
IntervalSingularMeasure cantor(int depth, double total_mass);

}  // namespace fixtures
}  // namespace innerlab
