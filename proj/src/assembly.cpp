// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

namespace
{

constexpr int kMaxLocal = 10;  // P3 triangle

// Triplets of one contiguous range of cells, matrix and right-hand side.
struct WorkerOutput
{
  std::vector<Triplet> matrix;
  std::vector<Triplet> rhs;  // column 0
  std::exception_ptr error;
};

void assemble_cells(const FESpace &space_u, const FESpace &space_p, const ProblemData &data,
                    const AssemblyOptions &options, const QuadratureRule &rule,
                    const SystemLayout &layout, int cell_begin, int cell_end, WorkerOutput &out)
{
  const ParametricMesh &mesh = space_u.mesh();
  const ImplicitSurface &surface = mesh.surface();
  CellGeometry geometry(mesh, rule);
  const ReferenceTable table_u(space_u.element(), rule);
  const ReferenceTable table_p(space_p.element(), rule);
  const int nu = space_u.dofs_per_cell();
  const int np = space_p.dofs_per_cell();
  const bool penalty = options.c_N > 0.0;

  double mass[kMaxLocal][kMaxLocal];
  double normal_mass[3][3][kMaxLocal][kMaxLocal];
  double stiffness[kMaxLocal][kMaxLocal];
  double coupling[3][kMaxLocal][kMaxLocal];  // (grad p, v) per component
  double constraint[kMaxLocal];
  double rhs_u[3][kMaxLocal];
  double rhs_p[kMaxLocal];
  Vec3 grad_p[kMaxLocal];

  for (int c = cell_begin; c < cell_end; ++c)
  {
    std::fill(&mass[0][0], &mass[0][0] + kMaxLocal * kMaxLocal, 0.0);
    std::fill(&normal_mass[0][0][0][0], &normal_mass[0][0][0][0] + 9 * kMaxLocal * kMaxLocal, 0.0);
    std::fill(&stiffness[0][0], &stiffness[0][0] + kMaxLocal * kMaxLocal, 0.0);
    std::fill(&coupling[0][0][0], &coupling[0][0][0] + 3 * kMaxLocal * kMaxLocal, 0.0);
    std::fill(constraint, constraint + kMaxLocal, 0.0);
    std::fill(&rhs_u[0][0], &rhs_u[0][0] + 3 * kMaxLocal, 0.0);
    std::fill(rhs_p, rhs_p + kMaxLocal, 0.0);

    geometry.reinit(c);
    for (int q = 0; q < rule.size(); ++q)
    {
      const PointGeometry &pg = geometry.point(q);
      const double w = pg.weight;
      const auto phi = table_u.values(q);
      const auto psi = table_p.values(q);
      geometry.surface_gradients(q, table_p.gradients(q), std::span<Vec3>(grad_p, np));

      const Vec3 xp = surface.closest_point(pg.x);
      const double f = data.f(xp);
      const Vec3 g = data.g(xp);

      for (int i = 0; i < nu; ++i)
      {
        for (int j = 0; j < nu; ++j)
        {
          mass[i][j] += 0.5 * w * phi[i] * phi[j];
        }
        for (int j = 0; j < np; ++j)
        {
          for (int d = 0; d < 3; ++d)
          {
            coupling[d][i][j] += 0.5 * w * phi[i] * grad_p[j][d];
          }
        }
        for (int d = 0; d < 3; ++d)
        {
          rhs_u[d][i] += 0.5 * w * g[d] * phi[i];
        }
      }
      if (penalty)
      {
        const Vec3 &n = pg.normal;
        for (int a = 0; a < 3; ++a)
        {
          for (int b = 0; b < 3; ++b)
          {
            const double s = options.c_N * w * n[a] * n[b];
            for (int i = 0; i < nu; ++i)
            {
              for (int j = 0; j < nu; ++j)
              {
                normal_mass[a][b][i][j] += s * phi[i] * phi[j];
              }
            }
          }
        }
      }
      for (int i = 0; i < np; ++i)
      {
        for (int j = 0; j < np; ++j)
        {
          stiffness[i][j] += 0.5 * w * dot(grad_p[i], grad_p[j]);
        }
        constraint[i] += w * psi[i];
        rhs_p[i] += w * (f * psi[i] + 0.5 * dot(g, grad_p[i]));
      }
    }

    const auto du = space_u.cell_dofs(c);
    const auto dp = space_p.cell_dofs(c);
    for (int a = 0; a < 3; ++a)
    {
      for (int i = 0; i < nu; ++i)
      {
        const int row = layout.velocity(a, du[i]);
        for (int b = 0; b < 3; ++b)
        {
          if (a != b && !penalty)
          {
            continue;
          }
          for (int j = 0; j < nu; ++j)
          {
            const double value = (a == b ? mass[i][j] : 0.0) + normal_mass[a][b][i][j];
            out.matrix.push_back({row, layout.velocity(b, du[j]), value});
          }
        }
        for (int j = 0; j < np; ++j)
        {
          out.matrix.push_back({row, layout.pressure(dp[j]), coupling[a][i][j]});
        }
        out.rhs.push_back({row, 0, rhs_u[a][i]});
      }
    }
    for (int i = 0; i < np; ++i)
    {
      const int row = layout.pressure(dp[i]);
      for (int a = 0; a < 3; ++a)
      {
        for (int j = 0; j < nu; ++j)
        {
          out.matrix.push_back({row, layout.velocity(a, du[j]), -coupling[a][j][i]});
        }
      }
      for (int j = 0; j < np; ++j)
      {
        out.matrix.push_back({row, layout.pressure(dp[j]), stiffness[i][j]});
      }
      out.matrix.push_back({row, layout.multiplier(), constraint[i]});
      out.matrix.push_back({layout.multiplier(), row, constraint[i]});
      out.rhs.push_back({row, 0, rhs_p[i]});
    }
  }
}

}  // namespace

ProblemData problem_data_from(const ExactSolution &exact) { return {exact.f, exact.g}; }

int resolve_quad_degree(const FESpace &space_u, const FESpace &space_p, int requested)
{
  if (requested >= 0)
  {
    return requested;
  }
  return std::min(14, default_quad_degree(space_u.order(), space_p.order(),
                                          space_u.mesh().geometry_order()));
}

LinearSystem assemble(const FESpace &space_u, const FESpace &space_p, const ProblemData &data,
                      const AssemblyOptions &options)
{
  if (!(options.c_N >= 0.0))
  {
    throw ConfigError("c_N must be non-negative");
  }
  if (&space_u.mesh() != &space_p.mesh())
  {
    throw ConfigError("velocity and pressure spaces must share one mesh");
  }
  const QuadratureRule &rule = quadrature_for(resolve_quad_degree(space_u, space_p, options.quad_degree));
  LinearSystem system;
  system.layout = {space_u.n_dofs(), space_p.n_dofs()};
  const int n = system.layout.size();
  const int num_cells = space_u.mesh().num_cells();

  const int threads = std::clamp(options.threads, 1, std::max(1, num_cells));
  std::vector<WorkerOutput> outputs(threads);
  auto range = [&](int t) {
    return std::pair{static_cast<int>(static_cast<long long>(num_cells) * t / threads),
                     static_cast<int>(static_cast<long long>(num_cells) * (t + 1) / threads)};
  };
  auto work = [&](int t) {
    try
    {
      const auto [begin, end] = range(t);
      assemble_cells(space_u, space_p, data, options, rule, system.layout, begin, end, outputs[t]);
    }
    catch (...)
    {
      outputs[t].error = std::current_exception();
    }
  };
  if (threads == 1)
  {
    work(0);
  }
  else
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
    {
      pool.emplace_back(work, t);
    }
  }

  std::size_t total = 0, total_rhs = 0;
  for (const auto &o : outputs)
  {
    if (o.error)
    {
      std::rethrow_exception(o.error);
    }
    total += o.matrix.size();
    total_rhs += o.rhs.size();
  }
  std::vector<Triplet> triplets, rhs_triplets;
  triplets.reserve(total);
  rhs_triplets.reserve(total_rhs);
  for (auto &o : outputs)
  {
    triplets.insert(triplets.end(), o.matrix.begin(), o.matrix.end());
    rhs_triplets.insert(rhs_triplets.end(), o.rhs.begin(), o.rhs.end());
    o = {};
  }
  system.matrix = CsrMatrix::from_triplets(n, n, std::move(triplets));
  const auto rhs = CsrMatrix::from_triplets(n, 1, std::move(rhs_triplets));
  system.rhs.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
  {
    system.rhs[i] = rhs.entry(i, 0);
  }
  return system;
}

std::vector<double> interpolate_exact(const FESpace &space_u, const FESpace &space_p,
                                      const ExactSolution &exact)
{
  const SystemLayout layout{space_u.n_dofs(), space_p.n_dofs()};
  const ImplicitSurface &surface = space_u.mesh().surface();
  std::vector<double> x(layout.size(), 0.0);
  for (int i = 0; i < space_u.n_dofs(); ++i)
  {
    const Vec3 u = exact.u(surface.closest_point(space_u.node_coords()[i]));
    for (int a = 0; a < 3; ++a)
    {
      x[layout.velocity(a, i)] = u[a];
    }
  }
  for (int i = 0; i < space_p.n_dofs(); ++i)
  {
    x[layout.pressure(i)] = exact.p.value(surface.closest_point(space_p.node_coords()[i]));
  }
  return x;
}

ErrorNorms assemble_error_norms(const FESpace &space_u, const FESpace &space_p,
                                std::span<const double> solution, const ExactSolution &exact,
                                int quad_degree)
{
  const SystemLayout layout{space_u.n_dofs(), space_p.n_dofs()};
  if (static_cast<int>(solution.size()) != layout.size())
  {
    throw ValueError("solution vector does not match the system layout");
  }
  const ParametricMesh &mesh = space_u.mesh();
  const ImplicitSurface &surface = mesh.surface();
  const QuadratureRule &rule = quadrature_for(resolve_quad_degree(space_u, space_p, quad_degree));
  CellGeometry geometry(mesh, rule);
  const ReferenceTable table_u(space_u.element(), rule);
  const ReferenceTable table_p(space_p.element(), rule);
  const int nu = space_u.dofs_per_cell();
  const int np = space_p.dofs_per_cell();
  Vec3 grad_p[kMaxLocal];

  auto pressure_at = [&](std::span<const int> dofs, int q) {
    const auto psi = table_p.values(q);
    double v = 0.0;
    for (int i = 0; i < np; ++i)
    {
      v += psi[i] * solution[layout.pressure(dofs[i])];
    }
    return v;
  };

  // Means of p^e and p_h on Gamma_h.
  double area = 0.0, int_exact = 0.0, int_h = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c)
  {
    geometry.reinit(c);
    const auto dp = space_p.cell_dofs(c);
    for (int q = 0; q < rule.size(); ++q)
    {
      const PointGeometry &pg = geometry.point(q);
      area += pg.weight;
      int_exact += pg.weight * exact.p.value(surface.closest_point(pg.x));
      int_h += pg.weight * pressure_at(dp, q);
    }
  }
  const double mean_exact = int_exact / area;
  const double mean_h = int_h / area;

  double eu2 = 0.0, ep2 = 0.0, etan2 = 0.0, enorm2 = 0.0, enorm_h2 = 0.0, egrad2 = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c)
  {
    geometry.reinit(c);
    const auto du = space_u.cell_dofs(c);
    const auto dp = space_p.cell_dofs(c);
    for (int q = 0; q < rule.size(); ++q)
    {
      const PointGeometry &pg = geometry.point(q);
      const double w = pg.weight;
      const auto phi = table_u.values(q);
      geometry.surface_gradients(q, table_p.gradients(q), std::span<Vec3>(grad_p, np));

      Vec3 uh;
      for (int i = 0; i < nu; ++i)
      {
        for (int a = 0; a < 3; ++a)
        {
          uh[a] += phi[i] * solution[layout.velocity(a, du[i])];
        }
      }
      Vec3 grad_ph;
      for (int i = 0; i < np; ++i)
      {
        grad_ph += solution[layout.pressure(dp[i])] * grad_p[i];
      }
      const double ph = pressure_at(dp, q);

      const Vec3 xp = surface.closest_point(pg.x);
      const Vec3 n = surface.normal(pg.x);
      const Vec3 ue = exact.u(xp);
      const double pe = exact.p.value(xp);
      const Vec3 grad_pe_ambient = surface.extension_gradient(exact.p, pg.x);
      const Vec3 grad_pe = grad_pe_ambient - dot(grad_pe_ambient, pg.normal) * pg.normal;

      const Vec3 err = ue - uh;
      const double err_n = dot(n, err);
      const Vec3 err_t = err - err_n * n;
      const double perr = (pe - mean_exact) - (ph - mean_h);
      const Vec3 gerr = grad_pe - grad_ph;

      eu2 += w * dot(err, err);
      etan2 += w * dot(err_t, err_t);
      enorm2 += w * dot(n, uh) * dot(n, uh);
      enorm_h2 += w * dot(pg.normal, uh) * dot(pg.normal, uh);
      ep2 += w * perr * perr;
      egrad2 += w * dot(gerr, gerr);
    }
  }
  ErrorNorms norms;
  norms.e_u = std::sqrt(eu2);
  norms.e_p = std::sqrt(ep2);
  norms.e_u_tan = std::sqrt(etan2);
  norms.e_u_norm = std::sqrt(enorm2);
  norms.e_u_norm_h = std::sqrt(enorm_h2);
  norms.e_grad_p = std::sqrt(egrad2);
  norms.energy = std::sqrt(eu2 + egrad2);
  norms.mean_p_h = mean_h;
  norms.area_h = area;
  return norms;
}

DataCheck check_problem_data(const ParametricMesh &mesh, const ProblemData &data, int quad_degree)
{
  const QuadratureRule &rule = quadrature_for(quad_degree);
  const ImplicitSurface &surface = mesh.surface();
  CellGeometry geometry(mesh, rule);
  double area = 0.0, integral = 0.0;
  DataCheck check;
  for (int c = 0; c < mesh.num_cells(); ++c)
  {
    geometry.reinit(c);
    for (int q = 0; q < rule.size(); ++q)
    {
      const PointGeometry &pg = geometry.point(q);
      const Vec3 xp = surface.closest_point(pg.x);
      area += pg.weight;
      integral += pg.weight * data.f(xp);
      check.max_normal_forcing =
          std::max(check.max_normal_forcing, std::abs(dot(surface.normal(xp), data.g(xp))));
    }
  }
  check.relative_source_mean = std::abs(integral) / area;
  return check;
}

}  // namespace surfdarcy
