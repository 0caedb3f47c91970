// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

#include "surfdarcy/errors.hpp"
#include "surfdarcy/quadrature.hpp"

namespace surfdarcy
{

namespace
{

constexpr double kMinJiggleAngleDegrees = 5.0;
constexpr int kMaxRedraws = 100;

double edge_length(const Vec3 &a, const Vec3 &b) { return norm(b - a); }

double triangle_diameter(const Vec3 &a, const Vec3 &b, const Vec3 &c)
{
  return std::max({edge_length(a, b), edge_length(b, c), edge_length(c, a)});
}

// Uniform double in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double min_triangle_angle_degrees(const Vec3 &a, const Vec3 &b, const Vec3 &c)
{
  auto angle = [](const Vec3 &p, const Vec3 &q, const Vec3 &r) {
    const Vec3 u = q - p;
    const Vec3 v = r - p;
    return std::atan2(norm(cross(u, v)), dot(u, v));
  };
  const double m = std::min({angle(a, b, c), angle(b, c, a), angle(c, a, b)});
  return m * 180.0 / std::numbers::pi;
}

ParametricMesh ParametricMesh::from_linear(const ImplicitSurface &surface,
                                           std::vector<Vec3> vertices, std::vector<Cell> cells,
                                           int geometry_order)
{
  if (geometry_order < 1 || geometry_order > 3)
  {
    throw ConfigError("geometry order must be 1, 2 or 3");
  }
  ParametricMesh mesh(surface, geometry_order);
  mesh.vertices_ = std::move(vertices);
  mesh.cells_ = std::move(cells);

  const int nv = mesh.num_vertices();
  const int nc = mesh.num_cells();
  for (const auto &c : mesh.cells_)
  {
    for (int v : c)
    {
      if (v < 0 || v >= nv)
      {
        throw DegenerateMeshError("cell references a vertex out of range");
      }
    }
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2])
    {
      throw DegenerateMeshError("cell with repeated vertex");
    }
  }

  // Edge table sorted by vertex pair.
  std::vector<std::tuple<int, int, int>> incidences;  // (a, b, 3*cell+e)
  incidences.reserve(3 * static_cast<std::size_t>(nc));
  for (int c = 0; c < nc; ++c)
  {
    for (int e = 0; e < 3; ++e)
    {
      const int a = mesh.cells_[c][e];
      const int b = mesh.cells_[c][(e + 1) % 3];
      incidences.emplace_back(std::min(a, b), std::max(a, b), 3 * c + e);
    }
  }
  std::sort(incidences.begin(), incidences.end());
  mesh.cell_edges_.assign(3 * static_cast<std::size_t>(nc), -1);
  for (std::size_t i = 0; i < incidences.size();)
  {
    std::size_t j = i;
    while (j < incidences.size() && std::get<0>(incidences[j]) == std::get<0>(incidences[i]) &&
           std::get<1>(incidences[j]) == std::get<1>(incidences[i]))
    {
      ++j;
    }
    if (j - i != 2)
    {
      throw DegenerateMeshError("edge (" + std::to_string(std::get<0>(incidences[i])) + ", " +
                                std::to_string(std::get<1>(incidences[i])) + ") is shared by " +
                                std::to_string(j - i) + " cells; mesh is not a closed surface");
    }
    const int edge = mesh.num_edges();
    mesh.edges_.push_back({std::get<0>(incidences[i]), std::get<1>(incidences[i])});
    mesh.edge_cells_.push_back({std::get<2>(incidences[i]) / 3, std::get<2>(incidences[i + 1]) / 3});
    mesh.cell_edges_[std::get<2>(incidences[i])] = edge;
    mesh.cell_edges_[std::get<2>(incidences[i + 1])] = edge;
    i = j;
  }

  // Lagrange geometry nodes: vertices as given, edge and interior nodes projected
  // from the affine cell.
  const ReferenceTriangle &ref = mesh.geometry_element_;
  const int k = ref.order();
  const int nloc = ref.num_nodes();
  std::vector<Vec3> edge_nodes(static_cast<std::size_t>(mesh.num_edges()) * (k - 1));
  for (int e = 0; e < mesh.num_edges(); ++e)
  {
    const Vec3 &a = mesh.vertices_[mesh.edges_[e][0]];
    const Vec3 &b = mesh.vertices_[mesh.edges_[e][1]];
    for (int t = 1; t < k; ++t)
    {
      const double s = static_cast<double>(t) / k;
      edge_nodes[static_cast<std::size_t>(e) * (k - 1) + (t - 1)] =
          surface.closest_point((1.0 - s) * a + s * b);
    }
  }
  mesh.geometry_nodes_.resize(static_cast<std::size_t>(nc) * nloc);
  for (int c = 0; c < nc; ++c)
  {
    Vec3 *nodes = &mesh.geometry_nodes_[static_cast<std::size_t>(c) * nloc];
    const Cell &cell = mesh.cells_[c];
    for (int v = 0; v < 3; ++v)
    {
      nodes[v] = mesh.vertices_[cell[v]];
    }
    for (int e = 0; e < 3; ++e)
    {
      const int edge = mesh.cell_edge(c, e);
      const bool reversed = mesh.cell_edge_reversed(c, e);
      for (int t = 0; t < k - 1; ++t)
      {
        const int pos = reversed ? (k - 2 - t) : t;
        nodes[ref.edge_node(e, t)] = edge_nodes[static_cast<std::size_t>(edge) * (k - 1) + pos];
      }
    }
    const Vec3 &v0 = mesh.vertices_[cell[0]];
    const Vec3 &v1 = mesh.vertices_[cell[1]];
    const Vec3 &v2 = mesh.vertices_[cell[2]];
    for (int m = 0; m < ref.num_interior_nodes(); ++m)
    {
      const int local = ref.interior_node(m);
      const Vec2 xi = ref.nodes()[local];
      nodes[local] = surface.closest_point(v0 + xi[0] * (v1 - v0) + xi[1] * (v2 - v0));
    }
  }

  for (const auto &c : mesh.cells_)
  {
    mesh.h_ = std::max(mesh.h_, triangle_diameter(mesh.vertices_[c[0]], mesh.vertices_[c[1]],
                                                  mesh.vertices_[c[2]]));
  }
  return mesh;
}

ParametricMesh build_structured_torus(const ImplicitSurface &torus, int n_major,
                                      int geometry_order, DiagonalSplit split)
{
  if (!torus.is_torus())
  {
    throw ConfigError("structured torus mesh requires a torus surface");
  }
  if (n_major < 8 || n_major % 2 != 0)
  {
    throw ConfigError("n_major must be even and at least 8 (got " + std::to_string(n_major) +
                      ")");
  }
  const Torus &t = std::get<Torus>(torus.kind());
  const int n_minor = n_major / 2;
  const double dtheta = 2.0 * std::numbers::pi / n_major;
  const double dphi = 2.0 * std::numbers::pi / n_minor;

  TorusGrid grid;
  grid.n_major = n_major;
  grid.n_minor = n_minor;
  grid.split = split;
  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(n_major) * n_minor);
  for (int i = 0; i < n_major; ++i)
  {
    for (int j = 0; j < n_minor; ++j)
    {
      const Vec2 angles{i * dtheta, j * dphi};
      grid.vertex_angles.push_back(angles);
      vertices.push_back(torus_point(t, angles[0], angles[1]));
    }
  }
  auto vid = [&](int i, int j) { return (i % n_major) * n_minor + (j % n_minor); };

  // (theta, phi) counter-clockwise ordering gives the exterior normal.
  std::vector<Cell> cells;
  cells.reserve(2 * static_cast<std::size_t>(n_major) * n_minor);
  for (int i = 0; i < n_major; ++i)
  {
    for (int j = 0; j < n_minor; ++j)
    {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const bool main_diagonal = split == DiagonalSplit::uniform || (i + j) % 2 == 0;
      if (main_diagonal)
      {
        cells.push_back({a, b, c});
        cells.push_back({a, c, d});
      }
      else
      {
        cells.push_back({a, b, d});
        cells.push_back({b, c, d});
      }
    }
  }
  auto mesh = ParametricMesh::from_linear(torus, std::move(vertices), std::move(cells),
                                          geometry_order);
  mesh.set_grid(std::move(grid));
  return mesh;
}

ParametricMesh jiggle_to_unstructured(const ParametricMesh &mesh, double amplitude,
                                      std::uint64_t seed)
{
  if (!mesh.grid() || mesh.grid()->jiggled)
  {
    throw ConfigError("jiggling requires a structured torus mesh");
  }
  if (!(amplitude >= 0.0 && amplitude <= 0.4))
  {
    throw ConfigError("jiggle amplitude must lie in [0, 0.4]");
  }
  const TorusGrid &grid = *mesh.grid();
  const Torus &t = std::get<Torus>(mesh.surface().kind());
  const double dtheta = 2.0 * std::numbers::pi / grid.n_major;
  const double dphi = 2.0 * std::numbers::pi / grid.n_minor;

  std::vector<std::vector<int>> vertex_cells(mesh.num_vertices());
  for (int c = 0; c < mesh.num_cells(); ++c)
  {
    for (int v : mesh.cells()[c])
    {
      vertex_cells[v].push_back(c);
    }
  }

  TorusGrid moved = grid;
  moved.jiggled = true;
  std::vector<Vec3> vertices(mesh.vertices().begin(), mesh.vertices().end());
  std::mt19937_64 rng(seed);
  for (int v = 0; v < mesh.num_vertices(); ++v)
  {
    bool accepted = false;
    for (int attempt = 0; attempt <= kMaxRedraws && !accepted; ++attempt)
    {
      const double ut = 2.0 * unit_uniform(rng) - 1.0;
      const double up = 2.0 * unit_uniform(rng) - 1.0;
      const Vec2 angles{grid.vertex_angles[v][0] + amplitude * dtheta * ut,
                        grid.vertex_angles[v][1] + amplitude * dphi * up};
      vertices[v] = torus_point(t, angles[0], angles[1]);
      accepted = std::all_of(vertex_cells[v].begin(), vertex_cells[v].end(), [&](int c) {
        const Cell &cell = mesh.cells()[c];
        return min_triangle_angle_degrees(vertices[cell[0]], vertices[cell[1]],
                                          vertices[cell[2]]) > kMinJiggleAngleDegrees;
      });
      if (accepted)
      {
        moved.vertex_angles[v] = angles;
      }
    }
    if (!accepted)
    {
      throw DegenerateMeshError("jiggling vertex " + std::to_string(v) +
                                " exhausted the redraw budget");
    }
  }
  std::vector<Cell> cells(mesh.cells().begin(), mesh.cells().end());
  auto out = ParametricMesh::from_linear(mesh.surface(), std::move(vertices), std::move(cells),
                                         mesh.geometry_order());
  out.set_grid(std::move(moved));
  return out;
}

ParametricMesh build_icosphere(const ImplicitSurface &sphere, int refinements, int geometry_order)
{
  if (sphere.is_torus())
  {
    throw ConfigError("icosphere requires a sphere surface");
  }
  if (refinements < 0 || refinements > 8)
  {
    throw ConfigError("icosphere refinements must lie in [0, 8]");
  }
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> vertices = {{-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0},
                                {0, -1, g}, {0, 1, g}, {0, -1, -g}, {0, 1, -g},
                                {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  std::vector<Cell> cells = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7}, {9, 8, 1}};
  for (auto &v : vertices)
  {
    v = sphere.closest_point(v);
  }
  for (int level = 0; level < refinements; ++level)
  {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end())
      {
        return it->second;
      }
      vertices.push_back(sphere.closest_point(0.5 * (vertices[a] + vertices[b])));
      const int id = static_cast<int>(vertices.size()) - 1;
      midpoints.emplace(key, id);
      return id;
    };
    std::vector<Cell> refined;
    refined.reserve(4 * cells.size());
    for (const auto &c : cells)
    {
      const int ab = midpoint(c[0], c[1]);
      const int bc = midpoint(c[1], c[2]);
      const int ca = midpoint(c[2], c[0]);
      refined.push_back({c[0], ab, ca});
      refined.push_back({c[1], bc, ab});
      refined.push_back({c[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    cells = std::move(refined);
  }
  return ParametricMesh::from_linear(sphere, std::move(vertices), std::move(cells),
                                     geometry_order);
}

ElementPoint element_map(const ParametricMesh &mesh, int cell, const Vec2 &ref_point)
{
  const ReferenceTriangle &ref = mesh.geometry_element();
  const int n = ref.num_nodes();
  std::array<double, 28> values{};
  std::array<Vec2, 28> grads{};
  ref.eval(ref_point, std::span<double>(values.data(), n));
  ref.eval_gradients(ref_point, std::span<Vec2>(grads.data(), n));
  const auto nodes = mesh.geometry_nodes(cell);
  ElementPoint out;
  for (int i = 0; i < n; ++i)
  {
    out.x += values[i] * nodes[i];
    out.jacobian.col0 += grads[i][0] * nodes[i];
    out.jacobian.col1 += grads[i][1] * nodes[i];
  }
  return out;
}

NormalAndMeasure discrete_normal_and_measure(const Mat32 &jacobian)
{
  const Vec3 c = cross(jacobian.col0, jacobian.col1);
  const double len = norm(c);
  if (len < 1e-14)
  {
    throw DegenerateElementError("element Jacobian is rank deficient");
  }
  return {c / len, len};
}

QualityReport mesh_quality_report(const ParametricMesh &mesh, int quad_degree)
{
  const ImplicitSurface &surface = mesh.surface();
  const QuadratureRule &rule = quadrature_for(quad_degree);
  QualityReport report;
  report.min_diameter = std::numeric_limits<double>::infinity();
  report.min_angle_degrees = 180.0;
  report.min_orientation = 1.0;
  report.h = mesh.h();
  report.euler_characteristic = mesh.euler_characteristic();
  for (int c = 0; c < mesh.num_cells(); ++c)
  {
    const Cell &cell = mesh.cells()[c];
    const Vec3 &a = mesh.vertices()[cell[0]];
    const Vec3 &b = mesh.vertices()[cell[1]];
    const Vec3 &d = mesh.vertices()[cell[2]];
    const double diam = triangle_diameter(a, b, d);
    report.min_diameter = std::min(report.min_diameter, diam);
    report.max_diameter = std::max(report.max_diameter, diam);
    report.min_angle_degrees = std::min(report.min_angle_degrees, min_triangle_angle_degrees(a, b, d));
    for (const Vec3 &node : mesh.geometry_nodes(c))
    {
      report.max_node_distance =
          std::max(report.max_node_distance, std::abs(surface.signed_distance(node)));
    }
    for (int q = 0; q < rule.size(); ++q)
    {
      const auto ep = element_map(mesh, c, rule.points[q]);
      const auto nm = discrete_normal_and_measure(ep.jacobian);
      report.max_abs_distance =
          std::max(report.max_abs_distance, std::abs(surface.signed_distance(ep.x)));
      report.max_normal_deviation =
          std::max(report.max_normal_deviation, norm(surface.normal(ep.x) - nm.normal));
    }
    const auto centroid = element_map(mesh, c, {1.0 / 3.0, 1.0 / 3.0});
    const auto nm = discrete_normal_and_measure(centroid.jacobian);
    report.min_orientation =
        std::min(report.min_orientation, dot(nm.normal, surface.normal(centroid.x)));
  }
  return report;
}

}  // namespace surfdarcy
