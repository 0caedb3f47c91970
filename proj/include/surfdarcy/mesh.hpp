// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_MESH_HPP
#define SURFDARCY_MESH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "surfdarcy/geometry.hpp"
#include "surfdarcy/reference_triangle.hpp"
#include "surfdarcy/vec.hpp"

namespace surfdarcy
{

using Cell = std::array<int, 3>;
using Edge = std::array<int, 2>;  // sorted vertex pair

/// How each (theta, phi) quad of a structured torus grid is cut into triangles.
enum class DiagonalSplit
{
  alternating,  // diagonal direction flips with the quad parity
  uniform       // every quad cut along the same diagonal
};

/// Parameter-plane description kept alongside meshes generated from a torus grid.
struct TorusGrid
{
  int n_major = 0;
  int n_minor = 0;
  DiagonalSplit split = DiagonalSplit::alternating;
  std::vector<Vec2> vertex_angles;  // (theta, phi) per vertex
  bool jiggled = false;
};

/**
 * Closed triangulated surface whose cells are images of the reference
 * triangle under order-k_g Lagrange maps. Geometry nodes are closest-point
 * projections of the Lagrange points of the underlying affine cells; nodes on a
 * shared edge are computed once per edge, so neighbouring cells agree bitwise.
 */
class ParametricMesh
{
public:
  /// Builds edges and higher-order geometry nodes from a linear triangulation
  /// whose vertices lie on the surface. Throws DegenerateMeshError unless every
  /// edge is shared by exactly two cells.
  static ParametricMesh from_linear(const ImplicitSurface &surface, std::vector<Vec3> vertices,
                                    std::vector<Cell> cells, int geometry_order);

  const ImplicitSurface &surface() const noexcept { return surface_; }
  int geometry_order() const noexcept { return geometry_element_.order(); }
  const ReferenceTriangle &geometry_element() const noexcept { return geometry_element_; }

  int num_vertices() const noexcept { return static_cast<int>(vertices_.size()); }
  int num_cells() const noexcept { return static_cast<int>(cells_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  int euler_characteristic() const noexcept { return num_vertices() - num_edges() + num_cells(); }

  std::span<const Vec3> vertices() const noexcept { return vertices_; }
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Global edge of local edge e (between local vertices e and (e+1)%3).
  int cell_edge(int cell, int e) const noexcept { return cell_edges_[3 * cell + e]; }
  /// True when local edge e runs from the larger to the smaller global vertex.
  bool cell_edge_reversed(int cell, int e) const noexcept
  {
    return cells_[cell][e] > cells_[cell][(e + 1) % 3];
  }
  std::array<int, 2> edge_cells(int edge) const noexcept { return edge_cells_[edge]; }

  std::span<const Vec3> geometry_nodes(int cell) const noexcept
  {
    const auto n = static_cast<std::size_t>(geometry_element_.num_nodes());
    return std::span<const Vec3>(geometry_nodes_).subspan(n * cell, n);
  }

  /// Maximum element diameter of the underlying linear mesh.
  double h() const noexcept { return h_; }

  const std::optional<TorusGrid> &grid() const noexcept { return grid_; }
  void set_grid(TorusGrid grid) { grid_ = std::move(grid); }

  friend bool operator==(const ParametricMesh &a, const ParametricMesh &b)
  {
    return a.vertices_ == b.vertices_ && a.cells_ == b.cells_ &&
           a.geometry_nodes_ == b.geometry_nodes_ && a.geometry_order() == b.geometry_order();
  }

private:
  ParametricMesh(const ImplicitSurface &surface, int geometry_order)
    : surface_(surface), geometry_element_(geometry_order)
  {
  }

  ImplicitSurface surface_;
  ReferenceTriangle geometry_element_;
  std::vector<Vec3> vertices_;
  std::vector<Cell> cells_;
  std::vector<Edge> edges_;
  std::vector<int> cell_edges_;
  std::vector<std::array<int, 2>> edge_cells_;
  std::vector<Vec3> geometry_nodes_;
  double h_ = 0.0;
  std::optional<TorusGrid> grid_;
};

/// (theta, phi) tensor grid with n_minor = n_major / 2, each quad cut in two.
ParametricMesh build_structured_torus(const ImplicitSurface &torus, int n_major, int geometry_order,
                                      DiagonalSplit split = DiagonalSplit::alternating);

/**
 * Moves every vertex of a structured torus mesh by a uniform random offset in
 * [-a dtheta, a dtheta] x [-a dphi, a dphi] of the parameter plane and rebuilds
 * the geometry. A draw that leaves an incident linear triangle with an angle
 * below 5 degrees is redrawn (at most 100 times per vertex).
 */
ParametricMesh jiggle_to_unstructured(const ParametricMesh &mesh, double amplitude,
                                      std::uint64_t seed);

/// Subdivided icosahedron projected onto a sphere.
ParametricMesh build_icosphere(const ImplicitSurface &sphere, int refinements, int geometry_order);

struct ElementPoint
{
  Vec3 x;
  Mat32 jacobian;
};

ElementPoint element_map(const ParametricMesh &mesh, int cell, const Vec2 &ref_point);

struct NormalAndMeasure
{
  Vec3 normal;
  double area_scale;
};

/// Normalized col0 x col1 and its length. Throws DegenerateElementError below 1e-14.
NormalAndMeasure discrete_normal_and_measure(const Mat32 &jacobian);

struct QualityReport
{
  double max_abs_distance = 0.0;   // max |rho| over quadrature points of Gamma_h
  double max_normal_deviation = 0.0;
  double min_diameter = 0.0;
  double max_diameter = 0.0;
  double min_angle_degrees = 0.0;  // of the linear triangles
  double max_node_distance = 0.0;  // max |rho| over geometry nodes
  double min_orientation = 0.0;    // min n_h . n(p) at cell centroids
  int euler_characteristic = 0;
  double h = 0.0;
};

QualityReport mesh_quality_report(const ParametricMesh &mesh, int quad_degree = 8);

/// Interior angles of the triangle (a, b, c) in degrees, the smallest one.
double min_triangle_angle_degrees(const Vec3 &a, const Vec3 &b, const Vec3 &c);

}  // namespace surfdarcy

#endif  // SURFDARCY_MESH_HPP
