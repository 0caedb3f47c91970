// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/fespace.hpp"

#include <algorithm>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

FESpace::FESpace(std::shared_ptr<const ParametricMesh> mesh, int order)
  : mesh_(std::move(mesh)), element_(order)
{
  if (order < 1 || order > 3)
  {
    throw ConfigError("FE order must be 1, 2 or 3");
  }
  const ParametricMesh &m = *mesh_;
  const int k = order;
  const int nv = m.num_vertices();
  const int ne = m.num_edges();
  const int per_edge = k - 1;
  const int per_cell = element_.num_interior_nodes();
  const int nloc = element_.num_nodes();
  n_dofs_ = nv + ne * per_edge + m.num_cells() * per_cell;

  dof_map_.resize(static_cast<std::size_t>(m.num_cells()) * nloc);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    int *dofs = &dof_map_[static_cast<std::size_t>(c) * nloc];
    for (int v = 0; v < 3; ++v)
    {
      dofs[v] = m.cells()[c][v];
    }
    for (int e = 0; e < 3; ++e)
    {
      const int edge = m.cell_edge(c, e);
      const bool reversed = m.cell_edge_reversed(c, e);
      for (int t = 0; t < per_edge; ++t)
      {
        const int pos = reversed ? (per_edge - 1 - t) : t;
        dofs[element_.edge_node(e, t)] = nv + edge * per_edge + pos;
      }
    }
    for (int i = 0; i < per_cell; ++i)
    {
      dofs[element_.interior_node(i)] = nv + ne * per_edge + c * per_cell + i;
    }
  }

  node_coords_.resize(n_dofs_);
  std::vector<char> seen(n_dofs_, 0);
  for (int c = 0; c < m.num_cells(); ++c)
  {
    const auto dofs = cell_dofs(c);
    for (int i = 0; i < nloc; ++i)
    {
      if (!seen[dofs[i]])
      {
        node_coords_[dofs[i]] = element_map(m, c, element_.nodes()[i]).x;
        seen[dofs[i]] = 1;
      }
    }
  }
}

FESpace build_space(std::shared_ptr<const ParametricMesh> mesh, int order)
{
  return FESpace(std::move(mesh), order);
}

std::array<double, 3> inverse_first_fundamental_form(const Mat32 &jacobian)
{
  const double g00 = dot(jacobian.col0, jacobian.col0);
  const double g01 = dot(jacobian.col0, jacobian.col1);
  const double g11 = dot(jacobian.col1, jacobian.col1);
  const double det = g00 * g11 - g01 * g01;
  if (det < 1e-24)
  {
    throw DegenerateElementError("first fundamental form is singular");
  }
  return {g11 / det, -g01 / det, g00 / det};
}

BasisEvaluation eval_basis(const FESpace &space, int cell, const Vec2 &ref_point)
{
  const auto ep = element_map(space.mesh(), cell, ref_point);
  const auto ginv = inverse_first_fundamental_form(ep.jacobian);
  const int n = space.dofs_per_cell();
  BasisEvaluation out;
  out.values.resize(n);
  out.surface_gradients.resize(n);
  std::vector<Vec2> ref_grads(n);
  space.element().eval(ref_point, out.values);
  space.element().eval_gradients(ref_point, ref_grads);
  for (int i = 0; i < n; ++i)
  {
    out.surface_gradients[i] = surface_gradient(ep.jacobian, ginv, ref_grads[i]);
  }
  return out;
}

int default_quad_degree(int velocity_order, int pressure_order, int geometry_order)
{
  return 2 * std::max(velocity_order, pressure_order) + geometry_order + 1;
}

ReferenceTable::ReferenceTable(const ReferenceTriangle &element, const QuadratureRule &rule)
  : n_(element.num_nodes())
{
  values_.resize(static_cast<std::size_t>(rule.size()) * n_);
  gradients_.resize(static_cast<std::size_t>(rule.size()) * n_);
  for (int q = 0; q < rule.size(); ++q)
  {
    element.eval(rule.points[q],
                 std::span<double>(values_).subspan(static_cast<std::size_t>(q) * n_, n_));
    element.eval_gradients(rule.points[q],
                           std::span<Vec2>(gradients_).subspan(static_cast<std::size_t>(q) * n_, n_));
  }
}

CellGeometry::CellGeometry(const ParametricMesh &mesh, const QuadratureRule &rule)
  : mesh_(&mesh), rule_(&rule), table_(mesh.geometry_element(), rule), points_(rule.size())
{
}

void CellGeometry::reinit(int cell)
{
  const auto nodes = mesh_->geometry_nodes(cell);
  const int n = table_.num_basis();
  for (int q = 0; q < rule_->size(); ++q)
  {
    const auto phi = table_.values(q);
    const auto dphi = table_.gradients(q);
    PointGeometry &pg = points_[q];
    pg.x = {};
    pg.jacobian = {};
    for (int i = 0; i < n; ++i)
    {
      pg.x += phi[i] * nodes[i];
      pg.jacobian.col0 += dphi[i][0] * nodes[i];
      pg.jacobian.col1 += dphi[i][1] * nodes[i];
    }
    const auto nm = discrete_normal_and_measure(pg.jacobian);
    pg.normal = nm.normal;
    pg.measure = nm.area_scale;
    pg.weight = rule_->weights[q] * nm.area_scale;
    pg.ginv = inverse_first_fundamental_form(pg.jacobian);
  }
}

void CellGeometry::surface_gradients(int q, std::span<const Vec2> ref_gradients,
                                     std::span<Vec3> out) const
{
  const PointGeometry &pg = points_[q];
  for (std::size_t i = 0; i < ref_gradients.size(); ++i)
  {
    out[i] = surface_gradient(pg.jacobian, pg.ginv, ref_gradients[i]);
  }
}

}  // namespace surfdarcy
