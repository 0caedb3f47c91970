// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/analysis.hpp"

#include <array>
#include <cmath>
#include <memory>

#include "surfdarcy/errors.hpp"
#include "surfdarcy/fespace.hpp"

namespace surfdarcy
{

namespace
{

// Table of the eight benchmark cases and their published observed orders.
constexpr std::array<ReferenceOrders, 8> kBenchmarkCases = {{
    {{1, 1, 1, 1, MeshFamily::structured}, 2, 2},
    {{2, 1, 2, 1, MeshFamily::structured}, 2, 2},
    {{3, 1, 1, 1, MeshFamily::unstructured}, 1, 2},
    {{4, 1, 2, 1, MeshFamily::unstructured}, 2, 2},
    {{5, 1, 1, 2, MeshFamily::structured}, 2, 2},
    {{6, 1, 2, 2, MeshFamily::structured}, 2, 3},
    {{7, 1, 1, 2, MeshFamily::unstructured}, 1, 2},
    {{8, 1, 2, 2, MeshFamily::unstructured}, 2, 3},
}};

}  // namespace

ExactSolution torus_exact_solution(const ImplicitSurface &torus)
{
  if (!torus.is_torus())
  {
    throw ConfigError("the torus benchmark needs a torus surface");
  }
  const double big_r = std::get<Torus>(torus.kind()).major_radius;
  const double tol = torus.tolerance();
  ExactSolution exact;
  exact.u = [big_r, tol](const Vec3 &x) {
    const double d = std::hypot(x.x, x.y);
    if (d < tol)
    {
      throw DomainError("torus solution is undefined on the z-axis");
    }
    return Vec3{2.0 * x.x * x.z, -2.0 * x.y * x.z, 2.0 * (x.x * x.x - x.y * x.y) * (big_r - d) / d};
  };
  exact.p.value = [](const Vec3 &x) { return x.z; };
  exact.p.gradient = [](const Vec3 &) { return Vec3{0.0, 0.0, 1.0}; };
  exact.f = [](const Vec3 &) { return 0.0; };
  // Capture by value: the solution may outlive the caller's surface object.
  exact.g = [torus, u = exact.u, p = exact.p](const Vec3 &x) {
    return u(x) + torus.surface_gradient_of_scalar(p, x);
  };
  return exact;
}

std::string to_string(MeshFamily family)
{
  return family == MeshFamily::structured ? "structured" : "unstructured";
}

MeshFamily mesh_family_from_string(const std::string &name)
{
  if (name == "structured")
  {
    return MeshFamily::structured;
  }
  if (name == "unstructured")
  {
    return MeshFamily::unstructured;
  }
  throw ConfigError("unknown mesh family '" + name + "' (expected structured or unstructured)");
}

std::span<const ReferenceOrders> benchmark_cases() { return kBenchmarkCases; }

CaseSpec benchmark_case(int id)
{
  if (id < 1 || id > static_cast<int>(kBenchmarkCases.size()))
  {
    throw ConfigError("case id must be between 1 and 8");
  }
  return kBenchmarkCases[id - 1].spec;
}

std::vector<double> eoc(std::span<const double> errors, std::span<const double> hs)
{
  if (errors.size() != hs.size() || errors.size() < 2)
  {
    throw ValueError("eoc needs two or more errors and matching mesh sizes");
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
  {
    if (!(errors[i] > 0.0) || !(hs[i] > 0.0))
    {
      throw ValueError("eoc needs positive errors and mesh sizes (level " + std::to_string(i) +
                       " is exact to roundoff or invalid)");
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i)
  {
    out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
  }
  return out;
}

std::vector<double> ConvergenceRecord::eoc_of(double ErrorNorms::*column) const
{
  std::vector<double> errs, hs;
  for (const auto &row : rows)
  {
    errs.push_back(row.errors.*column);
    hs.push_back(row.h);
  }
  if (errs.size() < 2)
  {
    return {};
  }
  return eoc(errs, hs);
}

std::uint64_t level_seed(std::uint64_t seed, int n_major)
{
  return seed * 1000003ULL + static_cast<std::uint64_t>(n_major);
}

ParametricMesh build_level_mesh(const CaseSpec &spec, int n_major, const RunOptions &options)
{
  const auto torus = ImplicitSurface::torus(options.major_radius, options.minor_radius);
  auto mesh = build_structured_torus(torus, n_major, spec.k_g, options.split);
  if (spec.family == MeshFamily::unstructured)
  {
    mesh = jiggle_to_unstructured(mesh, options.amplitude, level_seed(options.seed, n_major));
  }
  return mesh;
}

LevelResult run_level(const CaseSpec &spec, int n_major, const RunOptions &options)
{
  auto mesh = std::make_shared<const ParametricMesh>(build_level_mesh(spec, n_major, options));
  const auto report_distance = [&] {
    double worst = 0.0;
    const QuadratureRule &rule = quadrature_for(std::min(14, 2 * spec.k_g + 2));
    CellGeometry geometry(*mesh, rule);
    for (int c = 0; c < mesh->num_cells(); ++c)
    {
      geometry.reinit(c);
      for (int q = 0; q < rule.size(); ++q)
      {
        worst = std::max(worst, std::abs(mesh->surface().signed_distance(geometry.point(q).x)));
      }
    }
    return worst;
  };
  const double max_distance = report_distance();
  // Generated meshes must stay well inside the tubular neighbourhood.
  if (max_distance >= 0.5 * options.minor_radius)
  {
    throw DegenerateMeshError("Gamma_h leaves the neighbourhood max|rho| < r/2");
  }

  const FESpace space_u(mesh, spec.k_u);
  const FESpace space_p(mesh, spec.k_p);
  const ExactSolution exact = torus_exact_solution(mesh->surface());
  AssemblyOptions assembly;
  assembly.c_N = options.c_N;
  assembly.quad_degree = options.quad_degree;
  assembly.threads = options.threads;
  const LinearSystem system = assemble(space_u, space_p, problem_data_from(exact), assembly);

  const SolveResult solved = solve(system.matrix, system.rhs, options.solver);

  LevelResult row;
  row.n_major = n_major;
  row.h = mesh->h();
  row.n_dofs = 3 * space_u.n_dofs() + space_p.n_dofs();
  row.system_size = system.layout.size();
  row.iterations = solved.stats.iterations;
  row.solver_residual = solved.stats.relative_residual;
  row.galerkin_residual = relative_residual(system.matrix, solved.x, system.rhs);
  row.max_abs_distance = max_distance;
  row.errors = assemble_error_norms(space_u, space_p, solved.x, exact, options.quad_degree);

  if (options.dense_check_max_size > 0 && row.system_size <= options.dense_check_max_size)
  {
    const SolveResult other = options.solver.method == SolverMethod::krylov_gmres
                                  ? dense_lu(system.matrix, system.rhs)
                                  : gmres(system.matrix, system.rhs, options.solver);
    double diff = 0.0;
    for (std::size_t i = 0; i < solved.x.size(); ++i)
    {
      diff = std::max(diff, std::abs(solved.x[i] - other.x[i]));
    }
    row.dense_max_difference = diff;
  }
  if (options.level_observer)
  {
    options.level_observer({n_major, *mesh, space_u, space_p, system, solved.x});
  }
  return row;
}

ConvergenceRecord run_case(const CaseSpec &spec, const RunOptions &options)
{
  if (spec.k_u < 1 || spec.k_u > 3 || spec.k_p < 1 || spec.k_p > 3)
  {
    throw ConfigError("k_u and k_p must lie in {1, 2, 3}");
  }
  if (spec.k_g < 1 || spec.k_g > 2)
  {
    throw ConfigError("k_g must be 1 or 2");
  }
  for (int n_major : options.levels)
  {
    if (n_major < 8 || n_major % 2 != 0)
    {
      throw ConfigError("every level must be an even n_major >= 8");
    }
  }
  for (std::size_t i = 1; i < options.levels.size(); ++i)
  {
    if (options.levels[i] <= options.levels[i - 1])
    {
      throw ConfigError("levels must be strictly ascending");
    }
  }
  options.solver.validate();

  ConvergenceRecord record;
  record.spec = spec;
  record.options = options;
  for (int n_major : options.levels)
  {
    try
    {
      record.rows.push_back(run_level(spec, n_major, options));
    }
    catch (const ConvergenceError &e)
    {
      record.complete = false;
      record.solver_failed = true;
      record.failure = e.what();
      break;
    }
    catch (const SingularSystemError &e)
    {
      record.complete = false;
      record.solver_failed = true;
      record.failure = e.what();
      break;
    }
    catch (const Error &e)
    {
      record.complete = false;
      record.failure = e.what();
      break;
    }
  }
  return record;
}

}  // namespace surfdarcy
