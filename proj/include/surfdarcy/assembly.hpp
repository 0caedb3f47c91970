// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_ASSEMBLY_HPP
#define SURFDARCY_ASSEMBLY_HPP

#include <functional>
#include <span>
#include <vector>

#include "surfdarcy/exact_solution.hpp"
#include "surfdarcy/fespace.hpp"
#include "surfdarcy/sparse.hpp"

namespace surfdarcy
{

/// Source f and forcing g, evaluated at closest points of quadrature points on
/// Gamma_h (i.e. their extensions).
struct ProblemData
{
  std::function<double(const Vec3 &)> f;
  std::function<Vec3(const Vec3 &)> g;
};

ProblemData problem_data_from(const ExactSolution &exact);

/// Unknown ordering [u_x | u_y | u_z | p | mu]; mu enforces the zero mean of p.
struct SystemLayout
{
  int n_u = 0;
  int n_p = 0;

  int size() const noexcept { return 3 * n_u + n_p + 1; }
  int velocity(int component, int dof) const noexcept { return component * n_u + dof; }
  int pressure(int dof) const noexcept { return 3 * n_u + dof; }
  int multiplier() const noexcept { return 3 * n_u + n_p; }
};

struct LinearSystem
{
  CsrMatrix matrix;
  std::vector<double> rhs;
  SystemLayout layout;
};

struct AssemblyOptions
{
  double c_N = 0.0;       // normal penalty c_N (n_h.u, n_h.v)
  int quad_degree = -1;   // -1: default_quad_degree(k_u, k_p, k_g)
  int threads = 1;        // cell-range workers; the result does not depend on it
};

/**
 * Masud-Hughes stabilized system on Gamma_h:
 *
 *   A_h = 1/2 (u, v) + 1/2 (grad p, grad q) + 1/2 (grad p, v) - 1/2 (u, grad q)
 *         + c_N (n_h.u, n_h.v)
 *   L_h = (f, q) + 1/2 (g, v + grad q)
 *
 * with velocity tested componentwise in R^3 and one multiplier row for
 * the mean of p.
 */
LinearSystem assemble(const FESpace &space_u, const FESpace &space_p, const ProblemData &data,
                      const AssemblyOptions &options = {});

int resolve_quad_degree(const FESpace &space_u, const FESpace &space_p, int requested);

struct ErrorNorms
{
  double e_u = 0.0;         // ||u^e - u_h||
  double e_p = 0.0;         // ||p^e - p_h||, both shifted to zero mean on Gamma_h
  double e_u_tan = 0.0;     // ||P (u^e - u_h)|| with the exact projector
  double e_u_norm = 0.0;    // ||n . u_h|| with the exact normal
  double e_u_norm_h = 0.0;  // ||n_h . u_h||
  double e_grad_p = 0.0;    // ||grad_h (p^e - p_h)||
  double energy = 0.0;      // sqrt(e_u^2 + e_grad_p^2)
  double mean_p_h = 0.0;    // (1/|Gamma_h|) int p_h
  double area_h = 0.0;
};

/// Error norms on Gamma_h of a solved coefficient vector against an exact solution.
ErrorNorms assemble_error_norms(const FESpace &space_u, const FESpace &space_p,
                                std::span<const double> solution, const ExactSolution &exact,
                                int quad_degree = -1);

/// Nodal interpolant of the exact solution in the system layout (multiplier 0).
std::vector<double> interpolate_exact(const FESpace &space_u, const FESpace &space_p,
                                      const ExactSolution &exact);

struct DataCheck
{
  double relative_source_mean = 0.0;  // |int_{Gamma_h} f^e| / |Gamma_h|
  double max_normal_forcing = 0.0;    // max |n . g| at sampled points
};

DataCheck check_problem_data(const ParametricMesh &mesh, const ProblemData &data,
                             int quad_degree = 6);

}  // namespace surfdarcy

#endif  // SURFDARCY_ASSEMBLY_HPP
