// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after isa_supported(Isa::avx2) returned true. Keep it
// free of inline library code that other translation units also instantiate.

#include <immintrin.h>

#include "surfdarcy/kernels.hpp"

namespace surfdarcy::kernels::detail
{

bool lu_solve_eigen_avx2(double *a, int n, double *b);

namespace
{

inline double hsum(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double *x, const double *y, std::size_t n)
{
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
  {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
  {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i)
  {
    s += x[i] * y[i];
  }
  return s;
}

void axpy_avx2(double alpha, const double *x, double *y, std::size_t n)
{
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i)
  {
    y[i] += alpha * x[i];
  }
}

void scale_avx2(double alpha, double *x, std::size_t n)
{
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
  {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i)
  {
    x[i] *= alpha;
  }
}

void spmv_avx2(const CsrView &a, const double *x, double *y)
{
  for (int i = 0; i < a.rows; ++i)
  {
    const int begin = a.row_ptr[i];
    const int end = a.row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    int k = begin;
    for (; k + 4 <= end; k += 4)
    {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i *>(a.col_idx + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.values + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k)
    {
      s += a.values[k] * x[a.col_idx[k]];
    }
    y[i] = s;
  }
}

}  // namespace

const KernelTable &avx2_table() noexcept
{
  static const KernelTable table{dot_avx2, axpy_avx2, scale_avx2, spmv_avx2, lu_solve_eigen_avx2};
  return table;
}

}  // namespace surfdarcy::kernels::detail
