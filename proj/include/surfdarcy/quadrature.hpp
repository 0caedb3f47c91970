// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_QUADRATURE_HPP
#define SURFDARCY_QUADRATURE_HPP

#include <vector>

#include "surfdarcy/vec.hpp"

namespace surfdarcy
{

/// Quadrature on the reference triangle; weights sum to its area 1/2.
struct QuadratureRule
{
  int degree = 0;
  std::vector<Vec2> points;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

/**
 * Rule exact for polynomials up to `degree` (0 <= degree <= 14).
 *
 *   degree   rule
 *   0-1      centroid, 1 point
 *   2        symmetric, 3 points
 *   3-4      symmetric, 6 points (degree 4)
 *   5        symmetric, 7 points
 *   6        symmetric, 12 points
 *   7-8      symmetric, 16 points (degree 8)
 *   9-14     collapsed Gauss-Legendre product, n = ceil((degree + 2) / 2) per direction
 *
 * All weights are positive. Throws ConfigError outside [0, 14].
 */
const QuadratureRule &quadrature_for(int degree);

/// Gauss-Legendre points and weights on [0, 1].
void gauss_legendre_unit(int n, std::vector<double> &points, std::vector<double> &weights);

}  // namespace surfdarcy

#endif  // SURFDARCY_QUADRATURE_HPP
