// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_EXACT_SOLUTION_HPP
#define SURFDARCY_EXACT_SOLUTION_HPP

#include <functional>

#include "surfdarcy/geometry.hpp"

namespace surfdarcy
{

/// Closed-form Darcy solution on the exact surface: u + grad p = g, div u = f.
/// All fields are evaluated at points of the exact surface.
struct ExactSolution
{
  std::function<Vec3(const Vec3 &)> u;
  ScalarField p;
  std::function<double(const Vec3 &)> f;
  std::function<Vec3(const Vec3 &)> g;
};

}  // namespace surfdarcy

#endif  // SURFDARCY_EXACT_SOLUTION_HPP
