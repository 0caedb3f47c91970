// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/sparse.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets)
{
  for (const auto &t : triplets)
  {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
    {
      throw ValueError("triplet index out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet &a, const Triplet &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (std::size_t i = 0; i < triplets.size();)
  {
    const int r = triplets[i].row;
    const int c = triplets[i].col;
    double sum = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
    {
      sum += triplets[i].value;
      ++i;
    }
    m.col_idx_.push_back(c);
    m.values_.push_back(sum);
    ++m.row_ptr_[r + 1];
  }
  for (int r = 0; r < rows; ++r)
  {
    m.row_ptr_[r + 1] += m.row_ptr_[r];
  }
  return m;
}

double CsrMatrix::entry(int i, int j) const
{
  const auto begin = col_idx_.begin() + row_ptr_[i];
  const auto end = col_idx_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[it - col_idx_.begin()] : 0.0;
}

std::vector<double> CsrMatrix::diagonal() const
{
  std::vector<double> d(std::min(rows_, cols_), 0.0);
  for (int i = 0; i < static_cast<int>(d.size()); ++i)
  {
    d[i] = entry(i, i);
  }
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
  kernels::spmv(view(), x, y);
}

std::vector<double> CsrMatrix::to_dense_column_major() const
{
  std::vector<double> dense(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (int i = 0; i < rows_; ++i)
  {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    {
      dense[static_cast<std::size_t>(col_idx_[k]) * rows_ + i] = values_[k];
    }
  }
  return dense;
}

void write_matrix_market(std::ostream &out, const CsrMatrix &a)
{
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  char buf[64];
  for (int i = 0; i < a.rows(); ++i)
  {
    for (int k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
    {
      std::snprintf(buf, sizeof buf, "%.17g", a.values()[k]);
      out << i + 1 << ' ' << a.col_idx()[k] + 1 << ' ' << buf << '\n';
    }
  }
}

void write_matrix_market_vector(std::ostream &out, std::span<const double> v)
{
  out << "%%MatrixMarket matrix array real general\n";
  out << v.size() << " 1\n";
  char buf[64];
  for (double x : v)
  {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out << buf << '\n';
  }
}

}  // namespace surfdarcy
