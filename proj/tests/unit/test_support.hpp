#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "innerlab/circle.hpp"
#include "innerlab/inner_function.hpp"

namespace testsupport {

using innerlab::Complex;

inline Complex random_disk_point(std::mt19937_64& rng, double rmax = 0.9) {
  std::uniform_real_distribution<double> ang(-innerlab::kPi, innerlab::kPi);
  std::uniform_real_distribution<double> rad(0.0, 1.0);
  return std::polar(rmax * std::sqrt(rad(rng)), ang(rng));
}

inline innerlab::InnerFunction random_blaschke(std::mt19937_64& rng, int degree,
                                               bool zero_at_origin = true, double rmax = 0.9) {
  std::vector<Complex> zeros;
  if (zero_at_origin) zeros.push_back(0.0);
  while (static_cast<int>(zeros.size()) < degree) zeros.push_back(random_disk_point(rng, rmax));
  std::uniform_real_distribution<double> ang(-innerlab::kPi, innerlab::kPi);
  return innerlab::InnerFunction::blaschke(zeros, ang(rng));
}

inline double random_angle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-innerlab::kPi, innerlab::kPi);
  return ang(rng);
}

}  // namespace testsupport
