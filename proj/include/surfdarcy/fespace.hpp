// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_FESPACE_HPP
#define SURFDARCY_FESPACE_HPP

#include <memory>
#include <span>
#include <vector>

#include "surfdarcy/mesh.hpp"
#include "surfdarcy/quadrature.hpp"
#include "surfdarcy/reference_triangle.hpp"

namespace surfdarcy
{

/**
 * Continuous parametric Lagrange space of order k on a ParametricMesh.
 *
 * Global numbering is deterministic: vertex DOFs (vertex order), then edge
 * DOFs (edges sorted by vertex pair, nodes walking from the smaller vertex),
 * then cell-interior DOFs (cell order).
 */
class FESpace
{
public:
  FESpace(std::shared_ptr<const ParametricMesh> mesh, int order);

  const ParametricMesh &mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const ParametricMesh> &mesh_ptr() const noexcept { return mesh_; }
  int order() const noexcept { return element_.order(); }
  const ReferenceTriangle &element() const noexcept { return element_; }

  int n_dofs() const noexcept { return n_dofs_; }
  int dofs_per_cell() const noexcept { return element_.num_nodes(); }

  std::span<const int> cell_dofs(int cell) const noexcept
  {
    const auto n = static_cast<std::size_t>(dofs_per_cell());
    return std::span<const int>(dof_map_).subspan(n * cell, n);
  }

  /// Position of each DOF's Lagrange node on Gamma_h.
  std::span<const Vec3> node_coords() const noexcept { return node_coords_; }

private:
  std::shared_ptr<const ParametricMesh> mesh_;
  ReferenceTriangle element_;
  std::vector<int> dof_map_;
  std::vector<Vec3> node_coords_;
  int n_dofs_ = 0;
};

FESpace build_space(std::shared_ptr<const ParametricMesh> mesh, int order);

struct BasisEvaluation
{
  std::vector<double> values;
  std::vector<Vec3> surface_gradients;
};

/// Basis values and tangential gradients J (J^T J)^{-1} grad_ref at a reference point.
BasisEvaluation eval_basis(const FESpace &space, int cell, const Vec2 &ref_point);

/// Inverse of the first fundamental form J^T J, stored as (g00, g01, g11).
/// Throws DegenerateElementError when det(J^T J) < 1e-24.
std::array<double, 3> inverse_first_fundamental_form(const Mat32 &jacobian);

/// J (J^T J)^{-1} g for a reference gradient g.
inline Vec3 surface_gradient(const Mat32 &jacobian, const std::array<double, 3> &ginv,
                             const Vec2 &ref_gradient)
{
  const double a = ginv[0] * ref_gradient[0] + ginv[1] * ref_gradient[1];
  const double b = ginv[1] * ref_gradient[0] + ginv[2] * ref_gradient[1];
  return a * jacobian.col0 + b * jacobian.col1;
}

/// 2 max(k_u, k_p) + k_g + 1.
int default_quad_degree(int velocity_order, int pressure_order, int geometry_order);

/// Basis values and reference gradients of one element at every point of a rule.
class ReferenceTable
{
public:
  ReferenceTable(const ReferenceTriangle &element, const QuadratureRule &rule);

  int num_basis() const noexcept { return n_; }
  std::span<const double> values(int q) const noexcept
  {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(q) * n_, n_);
  }
  std::span<const Vec2> gradients(int q) const noexcept
  {
    return std::span<const Vec2>(gradients_).subspan(static_cast<std::size_t>(q) * n_, n_);
  }

private:
  int n_;
  std::vector<double> values_;
  std::vector<Vec2> gradients_;
};

struct PointGeometry
{
  Vec3 x;
  Mat32 jacobian;
  Vec3 normal;                    // n_h
  double measure = 0.0;           // |col0 x col1|
  double weight = 0.0;            // quadrature weight times measure
  std::array<double, 3> ginv{};   // (J^T J)^{-1}
};

/// Geometry of one cell at all points of a quadrature rule; reinit per cell.
class CellGeometry
{
public:
  CellGeometry(const ParametricMesh &mesh, const QuadratureRule &rule);

  void reinit(int cell);
  int num_points() const noexcept { return rule_->size(); }
  const PointGeometry &point(int q) const noexcept { return points_[q]; }

  /// Tangential gradients of one element's basis at point q.
  void surface_gradients(int q, std::span<const Vec2> ref_gradients, std::span<Vec3> out) const;

private:
  const ParametricMesh *mesh_;
  const QuadratureRule *rule_;
  ReferenceTable table_;
  std::vector<PointGeometry> points_;
};

}  // namespace surfdarcy

#endif  // SURFDARCY_FESPACE_HPP
