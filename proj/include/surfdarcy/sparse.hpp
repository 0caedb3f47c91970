// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_SPARSE_HPP
#define SURFDARCY_SPARSE_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "surfdarcy/kernels.hpp"

namespace surfdarcy
{

struct Triplet
{
  int row;
  int col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
class CsrMatrix
{
public:
  CsrMatrix() = default;

  /// Sums duplicates. The sort is stable, so entries are accumulated in the
  /// order they were produced and the result is independent of how the
  /// triplet list was chunked.
  static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int nnz() const noexcept { return static_cast<int>(values_.size()); }

  std::span<const int> row_ptr() const noexcept { return row_ptr_; }
  std::span<const int> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Stored value at (i, j), zero if absent.
  double entry(int i, int j) const;
  std::vector<double> diagonal() const;

  /// y = A x using the active kernel variant.
  void multiply(std::span<const double> x, std::span<double> y) const;

  kernels::CsrView view() const noexcept
  {
    return {rows_, row_ptr_.data(), col_idx_.data(), values_.data()};
  }

  /// Dense copy, column major.
  std::vector<double> to_dense_column_major() const;

  friend bool operator==(const CsrMatrix &, const CsrMatrix &) = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

/// Matrix Market coordinate real general format, 1-based indices, %.17g values.
void write_matrix_market(std::ostream &out, const CsrMatrix &a);
void write_matrix_market_vector(std::ostream &out, std::span<const double> v);

}  // namespace surfdarcy

#endif  // SURFDARCY_SPARSE_HPP
