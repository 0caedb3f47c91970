// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Reference implementations. Every other variant is tested against these.

#include <cmath>
#include <utility>

#include "surfdarcy/kernels.hpp"

namespace surfdarcy::kernels::detail
{

namespace
{

double dot_scalar(const double *x, const double *y, std::size_t n)
{
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
  {
    s += x[i] * y[i];
  }
  return s;
}

void axpy_scalar(double alpha, const double *x, double *y, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    y[i] += alpha * x[i];
  }
}

void scale_scalar(double alpha, double *x, std::size_t n)
{
  for (std::size_t i = 0; i < n; ++i)
  {
    x[i] *= alpha;
  }
}

void spmv_scalar(const CsrView &a, const double *x, double *y)
{
  for (int i = 0; i < a.rows; ++i)
  {
    double s = 0.0;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
    {
      s += a.values[k] * x[a.col_idx[k]];
    }
    y[i] = s;
  }
}

// Right-looking unblocked LU, column major.
bool lu_solve_scalar(double *a, int n, double *b)
{
  const auto at = [&](int i, int j) -> double & {
    return a[static_cast<std::size_t>(j) * n + i];
  };
  for (int k = 0; k < n; ++k)
  {
    int piv = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i < n; ++i)
    {
      if (std::abs(at(i, k)) > best)
      {
        best = std::abs(at(i, k));
        piv = i;
      }
    }
    if (best == 0.0)
    {
      return false;
    }
    if (piv != k)
    {
      for (int j = 0; j < n; ++j)
      {
        std::swap(at(k, j), at(piv, j));
      }
      std::swap(b[k], b[piv]);
    }
    const double inv = 1.0 / at(k, k);
    for (int i = k + 1; i < n; ++i)
    {
      at(i, k) *= inv;
    }
    for (int j = k + 1; j < n; ++j)
    {
      const double akj = at(k, j);
      if (akj == 0.0)
      {
        continue;
      }
      double *col = &at(0, j);
      const double *lk = &at(0, k);
      for (int i = k + 1; i < n; ++i)
      {
        col[i] -= akj * lk[i];
      }
    }
  }
  for (int i = 0; i < n; ++i)
  {
    double s = b[i];
    for (int j = 0; j < i; ++j)
    {
      s -= at(i, j) * b[j];
    }
    b[i] = s;
  }
  for (int i = n - 1; i >= 0; --i)
  {
    double s = b[i];
    for (int j = i + 1; j < n; ++j)
    {
      s -= at(i, j) * b[j];
    }
    b[i] = s / at(i, i);
  }
  return true;
}

}  // namespace

const KernelTable &scalar_table() noexcept
{
  static const KernelTable table{dot_scalar, axpy_scalar, scale_scalar, spmv_scalar,
                                 lu_solve_scalar};
  return table;
}

}  // namespace surfdarcy::kernels::detail
