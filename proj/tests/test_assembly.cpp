// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <memory>
#include <sstream>

#include "surfdarcy/analysis.hpp"
#include "surfdarcy/assembly.hpp"
#include "surfdarcy/errors.hpp"
#include "surfdarcy/quadrature.hpp"
#include "surfdarcy/solver.hpp"
#include "field_norms.hpp"
#include "test_support.hpp"

using namespace surfdarcy;

namespace
{

struct Problem
{
  std::shared_ptr<const ParametricMesh> mesh;
  FESpace u;
  FESpace p;
};

Problem make_problem(int n_major, int ku, int kp, int kg, bool jiggle)
{
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  auto mesh = build_structured_torus(torus, n_major, kg);
  if (jiggle)
  {
    mesh = jiggle_to_unstructured(mesh, 0.25, 99);
  }
  auto shared = std::make_shared<const ParametricMesh>(std::move(mesh));
  return {shared, FESpace(shared, ku), FESpace(shared, kp)};
}

ProblemData zero_data()
{
  return {[](const Vec3 &) { return 0.0; }, [](const Vec3 &) { return Vec3{}; }};
}

}  // namespace

TEST(Assembly, ZeroDataGivesZeroRhsAndSolution)
{
  const Problem pr = make_problem(8, 1, 2, 1, true);
  const auto system = assemble(pr.u, pr.p, zero_data());
  EXPECT_EQ(system.layout.size(), 3 * pr.u.n_dofs() + pr.p.n_dofs() + 1);
  for (double v : system.rhs)
  {
    EXPECT_EQ(v, 0.0);
  }
  const auto solved = solve(system.matrix, system.rhs);
  for (double v : solved.x)
  {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(Assembly, CsrIsSortedFiniteAndSkewCoupled)
{
  const Problem pr = make_problem(8, 1, 2, 2, true);
  const auto exact = torus_exact_solution(pr.mesh->surface());
  const auto system = assemble(pr.u, pr.p, problem_data_from(exact));
  const CsrMatrix &a = system.matrix;
  const SystemLayout &layout = system.layout;
  for (int i = 0; i < a.rows(); ++i)
  {
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
    {
      EXPECT_TRUE(std::isfinite(a.values()[k]));
      if (k + 1 < a.row_ptr()[i + 1])
      {
        EXPECT_LT(a.col_idx()[k], a.col_idx()[k + 1]);
      }
    }
  }
  // Velocity-pressure coupling is the exact negative transpose.
  for (int comp = 0; comp < 3; ++comp)
  {
    for (int i = 0; i < pr.u.n_dofs(); ++i)
    {
      const int row = layout.velocity(comp, i);
      for (int k = a.row_ptr()[row]; k < a.row_ptr()[row + 1]; ++k)
      {
        const int col = a.col_idx()[k];
        if (col >= layout.pressure(0) && col < layout.multiplier())
        {
          EXPECT_EQ(a.values()[k], -a.entry(col, row));
        }
      }
    }
  }
  // Multiplier row and column carry the pressure integrals only.
  EXPECT_EQ(a.entry(layout.multiplier(), layout.multiplier()), 0.0);
  double total = 0.0;
  for (int i = 0; i < pr.p.n_dofs(); ++i)
  {
    EXPECT_EQ(a.entry(layout.multiplier(), layout.pressure(i)), a.entry(layout.pressure(i), layout.multiplier()));
    total += a.entry(layout.multiplier(), layout.pressure(i));
  }
  EXPECT_EQ(a.entry(layout.multiplier(), layout.velocity(0, 0)), 0.0);
  EXPECT_EQ(system.rhs[layout.multiplier()], 0.0);
  // Sum of the pressure integrals is the area of Gamma_h.
  const double area = ImplicitSurface::torus(1.0, 0.5).area();
  EXPECT_NEAR(total, area, 0.02 * area);
}

TEST(Assembly, CoercivityIdentityAgainstFieldQuadrature)
{
  surfdarcy::testing::Sampler sample(2024);
  for (const auto &[ku, kp, kg] : {std::tuple{1, 1, 1}, {1, 2, 2}, {2, 3, 2}})
  {
    const Problem pr = make_problem(8, ku, kp, kg, true);
    for (double c_n : {0.0, 1.0})
    {
      AssemblyOptions options;
      options.c_N = c_n;
      const auto system = assemble(pr.u, pr.p, zero_data(), options);
      const QuadratureRule &rule = quadrature_for(resolve_quad_degree(pr.u, pr.p, -1));
      for (int trial = 0; trial < 20; ++trial)
      {
        std::vector<double> x(system.layout.size());
        for (double &v : x)
        {
          v = sample.uniform(-1.0, 1.0);
        }
        x[system.layout.multiplier()] = 0.0;
        const surfdarcy::testing::FieldNorms fn = surfdarcy::testing::field_norms(pr.u, pr.p, x, rule);
        const double expected = 0.5 * fn.u2 + 0.5 * fn.grad_p2 + c_n * fn.normal2;
        EXPECT_NEAR(surfdarcy::testing::quadratic_form(system.matrix, x), expected, 1e-10 * expected);
      }
    }
  }
}

TEST(Assembly, ThreadCountDoesNotChangeTheSystem)
{
  const Problem pr = make_problem(16, 1, 2, 2, true);
  const auto exact = torus_exact_solution(pr.mesh->surface());
  AssemblyOptions one, four;
  one.c_N = four.c_N = 0.5;
  four.threads = 4;
  const auto a = assemble(pr.u, pr.p, problem_data_from(exact), one);
  const auto b = assemble(pr.u, pr.p, problem_data_from(exact), four);
  EXPECT_TRUE(a.matrix == b.matrix);
  EXPECT_EQ(a.rhs, b.rhs);
}

TEST(Assembly, RejectsBadOptions)
{
  const Problem pr = make_problem(8, 1, 1, 1, false);
  AssemblyOptions options;
  options.c_N = -1.0;
  EXPECT_THROW(assemble(pr.u, pr.p, zero_data(), options), ConfigError);
  const Problem other = make_problem(8, 1, 1, 1, false);
  EXPECT_THROW(assemble(pr.u, other.p, zero_data()), ConfigError);
}

TEST(ErrorNorms, InterpolationErrorConverges)
{
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  const auto exact = torus_exact_solution(torus);
  std::vector<double> eu, hs;
  for (int n : {16, 32, 64})
  {
    const Problem pr = make_problem(n, 1, 1, 2, false);
    const auto x = interpolate_exact(pr.u, pr.p, exact);
    const auto norms = assemble_error_norms(pr.u, pr.p, x, exact);
    EXPECT_GT(norms.e_u, 0.0);
    eu.push_back(norms.e_u);
    hs.push_back(pr.mesh->h());
  }
  for (double rate : eoc(eu, hs))
  {
    EXPECT_NEAR(rate, 2.0, 0.3);
  }
}

TEST(ErrorNorms, ZeroSolutionGivesNormOfPressure)
{
  const Problem pr = make_problem(16, 1, 1, 2, true);
  const auto exact = torus_exact_solution(pr.mesh->surface());
  const std::vector<double> zero(3 * pr.u.n_dofs() + pr.p.n_dofs() + 1, 0.0);
  const auto norms = assemble_error_norms(pr.u, pr.p, zero, exact, 8);

  // Direct quadrature of z over Gamma_h with the mean removed.
  const QuadratureRule &rule = quadrature_for(8);
  double area = 0.0, int_z = 0.0, int_z2 = 0.0;
  for (int c = 0; c < pr.mesh->num_cells(); ++c)
  {
    for (int q = 0; q < rule.size(); ++q)
    {
      const auto ep = element_map(*pr.mesh, c, rule.points[q]);
      const double w = rule.weights[q] * norm(cross(ep.jacobian.col0, ep.jacobian.col1));
      const double z = pr.mesh->surface().closest_point(ep.x).z;
      area += w;
      int_z += w * z;
      int_z2 += w * z * z;
    }
  }
  const double mean = int_z / area;
  EXPECT_NEAR(norms.e_p, std::sqrt(int_z2 - area * mean * mean), 1e-10);
  EXPECT_NEAR(norms.area_h, area, 1e-12);
}

TEST(ErrorNorms, TangentNormalSplit)
{
  const Problem pr = make_problem(16, 1, 2, 1, true);
  const auto exact = torus_exact_solution(pr.mesh->surface());
  const auto system = assemble(pr.u, pr.p, problem_data_from(exact));
  const auto solved = solve(system.matrix, system.rhs);
  const auto norms = assemble_error_norms(pr.u, pr.p, solved.x, exact);
  EXPECT_GE(norms.e_u * norms.e_u, norms.e_u_tan * norms.e_u_tan + norms.e_u_norm * norms.e_u_norm - 1e-8);
  EXPECT_NEAR(norms.energy, std::hypot(norms.e_u, norms.e_grad_p), 1e-14);
  // The multiplier row enforces the zero mean of p_h.
  EXPECT_LE(std::abs(norms.mean_p_h * norms.area_h), 1e-9 * norms.area_h);
}

TEST(ExactSolution, PointValueAndTangency)
{
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  const auto exact = torus_exact_solution(torus);
  const Vec3 u = exact.u({1.5, 0.0, 0.0});
  EXPECT_NEAR(u.x, 0.0, 1e-15);
  EXPECT_NEAR(u.y, 0.0, 1e-15);
  EXPECT_NEAR(u.z, -1.5, 1e-15);
  EXPECT_THROW(exact.u({0.0, 0.0, 0.2}), DomainError);

  surfdarcy::testing::Sampler sample(555);
  for (int i = 0; i < 1000; ++i)
  {
    const Vec3 x = sample.on_torus(Torus{1.0, 0.5});
    const Vec3 n = torus.normal(x);
    EXPECT_LE(std::abs(dot(n, exact.u(x))), 1e-12);
    // g = u + P e_z for p = z.
    const Vec3 g_expected = exact.u(x) + (Vec3{0.0, 0.0, 1.0} - n.z * n);
    EXPECT_LE(norm(exact.g(x) - g_expected), 1e-9);
    EXPECT_EQ(exact.f(x), 0.0);
  }
  const auto check = check_problem_data(*std::make_shared<ParametricMesh>(build_structured_torus(torus, 16, 2)),
                                        problem_data_from(exact));
  EXPECT_EQ(check.relative_source_mean, 0.0);
  EXPECT_LE(check.max_normal_forcing, 1e-12);
}

TEST(ExactSolution, WeakDivergenceVanishesWithGeometry)
{
  // |(u^e, grad_h q)| / ||grad_h q|| for smooth discrete q decays at least like h^{k_g}.
  // Structured meshes cancel the pairing by symmetry, so the jiggled mesh is used.
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  const auto exact = torus_exact_solution(torus);
  for (int kg : {1, 2})
  {
    std::vector<double> ratios, hs;
    for (int n : {16, 32, 64})
    {
      const Problem pr = make_problem(n, 1, 1, kg, true);
      const QuadratureRule &rule = quadrature_for(6);
      std::vector<double> coef(pr.p.n_dofs());
      for (int i = 0; i < pr.p.n_dofs(); ++i)
      {
        const Vec3 &x = pr.p.node_coords()[i];
        coef[i] = x.x * x.y + x.z + x.x * x.z;
      }
      double pairing = 0.0, grad2 = 0.0;
      for (int c = 0; c < pr.mesh->num_cells(); ++c)
      {
        const auto dofs = pr.p.cell_dofs(c);
        for (int q = 0; q < rule.size(); ++q)
        {
          const auto ep = element_map(*pr.mesh, c, rule.points[q]);
          const double w = rule.weights[q] * norm(cross(ep.jacobian.col0, ep.jacobian.col1));
          const auto basis = eval_basis(pr.p, c, rule.points[q]);
          Vec3 gq;
          for (int i = 0; i < pr.p.dofs_per_cell(); ++i)
          {
            gq += coef[dofs[i]] * basis.surface_gradients[i];
          }
          pairing += w * dot(exact.u(torus.closest_point(ep.x)), gq);
          grad2 += w * dot(gq, gq);
        }
      }
      ratios.push_back(std::abs(pairing) / std::sqrt(grad2));
      hs.push_back(pr.mesh->h());
    }
    const auto rates = eoc(ratios, hs);
    EXPECT_GE(rates.back(), kg - 0.3) << "k_g " << kg;
    EXPECT_LE(ratios.back(), 0.1);
  }
}

TEST(MatrixMarket, CoordinateFormat)
{
  const auto a = CsrMatrix::from_triplets(2, 3, {{0, 0, 1.5}, {1, 2, -2.0}, {0, 0, 0.5}});
  std::ostringstream out;
  write_matrix_market(out, a);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("%%MatrixMarket matrix coordinate real general\n", 0), 0u);
  EXPECT_NE(text.find("2 3 2\n"), std::string::npos);
  EXPECT_NE(text.find("1 1 2\n"), std::string::npos);
  EXPECT_NE(text.find("2 3 -2\n"), std::string::npos);
}
