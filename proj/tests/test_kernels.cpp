// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "surfdarcy/analysis.hpp"
#include "surfdarcy/kernels.hpp"
#include "surfdarcy/solver.hpp"

using namespace surfdarcy;
using namespace surfdarcy::kernels;

namespace
{

std::vector<double> random_vector(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double &x : v)
  {
    x = dist(rng);
  }
  return v;
}

class KernelEquivalence : public ::testing::Test
{
protected:
  void SetUp() override
  {
    if (!isa_supported(Isa::avx2))
    {
      GTEST_SKIP() << "AVX2 variant not available on this machine";
    }
  }
  const KernelTable &ref = kernel_table(Isa::scalar);
  const KernelTable &simd() { return kernel_table(Isa::avx2); }
};

}  // namespace

TEST_F(KernelEquivalence, DotAxpyScale)
{
  // Lengths that exercise the vector body and every remainder.
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 1001u})
  {
    const auto x = random_vector(n, n + 1);
    auto y_ref = random_vector(n, n + 2);
    auto y_simd = y_ref;
    const double d_ref = ref.dot(x.data(), y_ref.data(), n);
    const double d_simd = simd().dot(x.data(), y_simd.data(), n);
    EXPECT_NEAR(d_ref, d_simd, 1e-13 * std::max(1.0, std::abs(d_ref)) + 1e-14 * n);

    ref.axpy(0.7, x.data(), y_ref.data(), n);
    simd().axpy(0.7, x.data(), y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i)
    {
      EXPECT_NEAR(y_ref[i], y_simd[i], 1e-15);
    }
    ref.scale(-1.3, y_ref.data(), n);
    simd().scale(-1.3, y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i)
    {
      EXPECT_NEAR(y_ref[i], y_simd[i], 1e-15);
    }
  }
}

TEST_F(KernelEquivalence, SpmvOnAssembledSystem)
{
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  auto mesh = std::make_shared<const ParametricMesh>(
      jiggle_to_unstructured(build_structured_torus(torus, 16, 2), 0.25, 1));
  const FESpace u(mesh, 1), p(mesh, 2);
  const auto system = assemble(u, p, problem_data_from(torus_exact_solution(torus)));
  const auto x = random_vector(system.matrix.cols(), 77);
  std::vector<double> y_ref(system.matrix.rows()), y_simd(system.matrix.rows());
  ref.spmv(system.matrix.view(), x.data(), y_ref.data());
  simd().spmv(system.matrix.view(), x.data(), y_simd.data());
  for (int i = 0; i < system.matrix.rows(); ++i)
  {
    EXPECT_NEAR(y_ref[i], y_simd[i], 1e-14);
  }
}

TEST_F(KernelEquivalence, DenseLu)
{
  for (int n : {1, 5, 33, 120})
  {
    auto a = random_vector(static_cast<std::size_t>(n) * n, 3 * n);
    for (int i = 0; i < n; ++i)
    {
      a[static_cast<std::size_t>(i) * n + i] += 2.0;
    }
    auto a_simd = a;
    auto b_ref = random_vector(n, 5 * n);
    auto b_simd = b_ref;
    ASSERT_TRUE(ref.lu_solve(a.data(), n, b_ref.data()));
    ASSERT_TRUE(simd().lu_solve(a_simd.data(), n, b_simd.data()));
    for (int i = 0; i < n; ++i)
    {
      EXPECT_NEAR(b_ref[i], b_simd[i], 1e-10);
    }
  }
  std::vector<double> singular{1.0, 2.0, 2.0, 4.0};
  std::vector<double> b{1.0, 1.0};
  EXPECT_FALSE(ref.lu_solve(singular.data(), 2, b.data()));
}

TEST_F(KernelEquivalence, SolverPathsAgree)
{
  const auto torus = ImplicitSurface::torus(1.0, 0.5);
  auto mesh = std::make_shared<const ParametricMesh>(build_structured_torus(torus, 16, 1));
  const FESpace u(mesh, 1), p(mesh, 1);
  const auto system = assemble(u, p, problem_data_from(torus_exact_solution(torus)));
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  const auto scalar = solve(system.matrix, system.rhs);
  set_active_isa(Isa::avx2);
  const auto vector = solve(system.matrix, system.rhs);
  set_active_isa(before);
  for (std::size_t i = 0; i < scalar.x.size(); ++i)
  {
    EXPECT_NEAR(scalar.x[i], vector.x[i], 1e-9);
  }
}

TEST(Kernels, ScalarAlwaysAvailable)
{
  EXPECT_TRUE(isa_supported(Isa::scalar));
  EXPECT_STREQ(isa_name(Isa::scalar), "scalar");
  EXPECT_STREQ(isa_name(Isa::avx2), "avx2");
  const std::vector<double> x{3.0, 4.0};
  EXPECT_DOUBLE_EQ(nrm2(x), 5.0);
}
