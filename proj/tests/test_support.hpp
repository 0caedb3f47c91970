// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_TEST_SUPPORT_HPP
#define SURFDARCY_TEST_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "surfdarcy/geometry.hpp"
#include "surfdarcy/vec.hpp"

namespace surfdarcy::testing
{

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Sampler
{
public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Point on the torus surface at uniformly drawn angles.
  Vec3 on_torus(const Torus &t) { return torus_point(t, uniform(0.0, kTwoPi), uniform(0.0, kTwoPi)); }

  /// Point at signed offset within +-max_offset of the torus surface.
  Vec3 near_torus(const Torus &t, double max_offset)
  {
    const double theta = uniform(0.0, kTwoPi);
    const double phi = uniform(0.0, kTwoPi);
    const double rho = uniform(-max_offset, max_offset);
    return torus_point(Torus{t.major_radius, t.minor_radius + rho}, theta, phi);
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline double max_abs(const Mat3 &m)
{
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

}  // namespace surfdarcy::testing

#endif  // SURFDARCY_TEST_SUPPORT_HPP
