// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_ANALYSIS_HPP
#define SURFDARCY_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfdarcy/assembly.hpp"
#include "surfdarcy/exact_solution.hpp"
#include "surfdarcy/mesh.hpp"
#include "surfdarcy/solver.hpp"

namespace surfdarcy
{

/// Divergence-free tangential flow on the torus with pressure p = z:
///   u = (2xz, -2yz, 2(x^2 - y^2)(R - d)/d),  d = sqrt(x^2 + y^2),
///   f = 0,  g = u + P e_z.
ExactSolution torus_exact_solution(const ImplicitSurface &torus);

enum class MeshFamily
{
  structured,
  unstructured
};

std::string to_string(MeshFamily family);
MeshFamily mesh_family_from_string(const std::string &name);

struct CaseSpec
{
  int id = 0;  // 0 for an explicit (k_u, k_p, k_g, family) combination
  int k_u = 1;
  int k_p = 1;
  int k_g = 1;
  MeshFamily family = MeshFamily::structured;
};

/// Published observed orders for one benchmark case.
struct ReferenceOrders
{
  CaseSpec spec;
  int order_e_u;
  int order_e_p;
};

/// The eight benchmark cases, ids 1..8.
std::span<const ReferenceOrders> benchmark_cases();
CaseSpec benchmark_case(int id);

/// Per-level objects handed to RunOptions::level_observer after a successful solve.
struct LevelArtifacts
{
  int n_major = 0;
  const ParametricMesh &mesh;
  const FESpace &space_u;
  const FESpace &space_p;
  const LinearSystem &system;
  std::span<const double> solution;
};

struct RunOptions
{
  std::vector<int> levels{16, 32, 64, 128};
  double c_N = 0.0;
  std::uint64_t seed = 42;
  double amplitude = 0.25;
  DiagonalSplit split = DiagonalSplit::alternating;
  double major_radius = 1.0;
  double minor_radius = 0.5;
  SolverConfig solver;
  int quad_degree = -1;
  int threads = 1;
  /// Also solve with dense LU when the system size is at most this (0: never).
  int dense_check_max_size = 0;
  /// Optional hook for writing per-level artifacts (VTK, Matrix Market).
  std::function<void(const LevelArtifacts &)> level_observer;
};

struct LevelResult
{
  int n_major = 0;
  double h = 0.0;
  int n_dofs = 0;        // 3 n_u + n_p
  int system_size = 0;   // including the multiplier
  ErrorNorms errors;
  int iterations = 0;
  double solver_residual = 0.0;    // reported by the solver
  double galerkin_residual = 0.0;  // recomputed with the reference kernels
  double max_abs_distance = 0.0;   // max |rho| at quadrature points of Gamma_h
  std::optional<double> dense_max_difference;  // max |x_gmres - x_lu| when checked
};

struct ConvergenceRecord
{
  CaseSpec spec;
  RunOptions options;
  std::vector<LevelResult> rows;
  bool complete = true;
  std::string failure;  // set when a level aborted the case
  bool solver_failed = false;

  /// EOCs between consecutive rows of one error column.
  std::vector<double> eoc_of(double ErrorNorms::*column) const;
};

/// log(e_i / e_{i+1}) / log(h_i / h_{i+1}). Throws ValueError on non-positive
/// entries or fewer than two values.
std::vector<double> eoc(std::span<const double> errors, std::span<const double> hs);

/// Mesh for one level of a case (jiggled with a level-dependent seed when unstructured).
ParametricMesh build_level_mesh(const CaseSpec &spec, int n_major, const RunOptions &options);

/// Seed used to jiggle level n_major.
std::uint64_t level_seed(std::uint64_t seed, int n_major);

LevelResult run_level(const CaseSpec &spec, int n_major, const RunOptions &options);

/// Runs every level. A failing level stops the case; the partial record has
/// complete == false and the error message in `failure`.
ConvergenceRecord run_case(const CaseSpec &spec, const RunOptions &options);

}  // namespace surfdarcy

#endif  // SURFDARCY_ANALYSIS_HPP
