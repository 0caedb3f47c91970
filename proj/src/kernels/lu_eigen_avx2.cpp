// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Blocked dense LU for the AVX2 variant, backed by Eigen and compiled with
// -mavx2 -mfma. Eigen is included by no other translation unit, so its
// template instantiations cannot be merged with baseline-ISA copies.

#include <Eigen/Dense>

namespace surfdarcy::kernels::detail
{

bool lu_solve_eigen_avx2(double *a, int n, double *b)
{
  Eigen::Map<Eigen::MatrixXd> matrix(a, n, n);
  Eigen::Map<Eigen::VectorXd> rhs(b, n);
  Eigen::PartialPivLU<Eigen::Ref<Eigen::MatrixXd>> lu(matrix);
  if ((lu.matrixLU().diagonal().array() == 0.0).any())
  {
    return false;
  }
  rhs = lu.solve(rhs).eval();
  return true;
}

}  // namespace surfdarcy::kernels::detail
