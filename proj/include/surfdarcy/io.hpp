// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_IO_HPP
#define SURFDARCY_IO_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "surfdarcy/analysis.hpp"
#include "surfdarcy/fespace.hpp"
#include "surfdarcy/mesh.hpp"

namespace surfdarcy
{

/// Writes `content` to a temporary sibling file and renames it over `path`.
void atomic_write_file(const std::filesystem::path &path, const std::string &content);

/// CSV header shared by every convergence table.
inline constexpr const char *kCsvHeader =
    "level,n_major,h,n_dofs,e_u,eoc_u,e_p,eoc_p,e_u_tan,eoc_u_tan,e_u_norm,eoc_u_norm,energy,"
    "eoc_energy";

/// One row per level; the EOC columns of the first row are empty.
std::string record_to_csv(const ConvergenceRecord &record);

/// CSV rows plus the configuration that produced them and solver diagnostics.
/// Wall-clock times are omitted so that output bytes are reproducible.
std::string record_to_json(const ConvergenceRecord &record);

/// Field sampled at reference points of each cell for visualization.
struct VtkField
{
  std::string name;
  int components = 1;  // 1 or 3
  std::function<void(int cell, const Vec2 &ref_point, double *out)> eval;
};

/**
 * Legacy ASCII VTK unstructured grid. Each cell is written as k_g^2 linear
 * triangles over its Lagrange lattice with its own copy of the points, so
 * discontinuous cellwise fields (such as n_h) are represented exactly.
 */
void write_vtk(std::ostream &out, const ParametricMesh &mesh, std::span<const VtkField> fields,
               const std::string &title = "surfdarcy");

/// u_h, p_h, n_h . u_h and n . u_h fields of a solved system.
std::vector<VtkField> solution_fields(const FESpace &space_u, const FESpace &space_p,
                                      std::span<const double> solution);

}  // namespace surfdarcy

#endif  // SURFDARCY_IO_HPP
