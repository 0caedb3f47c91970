// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_REFERENCE_TRIANGLE_HPP
#define SURFDARCY_REFERENCE_TRIANGLE_HPP

#include <array>
#include <span>
#include <vector>

#include "surfdarcy/vec.hpp"

namespace surfdarcy
{

/**
 * Equispaced Lagrange basis of order k on the reference triangle
 * {(xi, eta) : xi, eta >= 0, xi + eta <= 1}.
 *
 * Local node layout:
 *   0, 1, 2                      vertices (0,0), (1,0), (0,1)
 *   3 + e (k-1) + t              t-th interior node of local edge e, walking
 *                                from local vertex e to local vertex (e+1)%3
 *   3 + 3 (k-1) + m              cell-interior nodes
 */
class ReferenceTriangle
{
public:
  explicit ReferenceTriangle(int order);

  int order() const noexcept { return order_; }
  int num_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
  int num_edge_nodes() const noexcept { return order_ - 1; }
  int num_interior_nodes() const noexcept { return (order_ - 1) * (order_ - 2) / 2; }

  int edge_node(int edge, int t) const noexcept { return 3 + edge * (order_ - 1) + t; }
  int interior_node(int m) const noexcept { return 3 + 3 * (order_ - 1) + m; }

  std::span<const Vec2> nodes() const noexcept { return nodes_; }

  void eval(const Vec2 &xi, std::span<double> values) const;
  void eval_gradients(const Vec2 &xi, std::span<Vec2> gradients) const;

private:
  int order_;
  std::vector<std::array<int, 3>> bary_;  // integer barycentric indices (lambda0, xi, eta) * k
  std::vector<Vec2> nodes_;
};

}  // namespace surfdarcy

#endif  // SURFDARCY_REFERENCE_TRIANGLE_HPP
