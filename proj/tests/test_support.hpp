#ifndef TRIDENT_TEST_SUPPORT_HPP
#define TRIDENT_TEST_SUPPORT_HPP

#include <cmath>
#include <random>

#include "trident/configuration.hpp"

namespace trident::testing {

/// Valid configuration box: x, y in [-1, 1], theta in [-pi, pi], phi in [-0.3, 0.3], legs in [0.5, 2].
inline Configuration random_valid_configuration(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::uniform_real_distribution<double> joint(-0.3, 0.3);
  std::uniform_real_distribution<double> leg(0.5, 2.0);
  const double x = unit(rng);
  const double y = unit(rng);
  const double theta = angle(rng);
  const double phi = joint(rng);
  const double l1 = leg(rng);
  const double l2 = leg(rng);
  const double l3 = leg(rng);
  return Configuration::original(x, y, theta, phi, l1, l2, l3);
}

/// A point on the slice x = y = 0, theta = pi/2 with phi and legs from the valid box.
inline Configuration random_slice_configuration(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> joint(-0.3, 0.3);
  std::uniform_real_distribution<double> leg(0.5, 2.0);
  const double phi = joint(rng);
  const double l1 = leg(rng);
  const double l2 = leg(rng);
  const double l3 = leg(rng);
  return Configuration::original(0.0, 0.0, M_PI / 2.0, phi, l1, l2, l3);
}

inline Vector7 random_vector(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0)
{
  std::uniform_real_distribution<double> box(lo, hi);
  Vector7 v;
  for (int i = 0; i < 7; ++i) v(i) = box(rng);
  return v;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.lpNorm<Eigen::Infinity>(); }

}  // namespace trident::testing

#endif  // TRIDENT_TEST_SUPPORT_HPP
