// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_KERNELS_HPP
#define SURFDARCY_KERNELS_HPP

#include <cstddef>
#include <span>

namespace surfdarcy::kernels
{

/// Instruction-set variants of the data-parallel kernels.
enum class Isa
{
  scalar,
  avx2  // AVX2 + FMA
};

const char *isa_name(Isa isa) noexcept;

/// Whether the running CPU can execute `isa`.
bool isa_supported(Isa isa) noexcept;

/// Best variant for this CPU; SURFDARCY_ISA=scalar in the environment forces scalar.
Isa detected_isa() noexcept;

/// Variant used by the dispatching wrappers below. Defaults to detected_isa().
Isa active_isa() noexcept;

/// Throws ConfigError if the CPU cannot run `isa`.
void set_active_isa(Isa isa);

struct CsrView
{
  int rows;
  const int *row_ptr;
  const int *col_idx;
  const double *values;
};

/// Function table of one variant.
struct KernelTable
{
  double (*dot)(const double *x, const double *y, std::size_t n);
  void (*axpy)(double alpha, const double *x, double *y, std::size_t n);
  void (*scale)(double alpha, double *x, std::size_t n);
  void (*spmv)(const CsrView &a, const double *x, double *y);
  /// In-place LU with partial pivoting of a column-major n x n matrix followed by
  /// the solve for b. Returns false on an exactly zero pivot.
  bool (*lu_solve)(double *a, int n, double *b);
};

const KernelTable &kernel_table(Isa isa);

// Dispatching wrappers over the active variant.
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
double nrm2(std::span<const double> x);
void spmv(const CsrView &a, std::span<const double> x, std::span<double> y);

namespace detail
{
const KernelTable &scalar_table() noexcept;
const KernelTable &avx2_table() noexcept;
}  // namespace detail

}  // namespace surfdarcy::kernels

#endif  // SURFDARCY_KERNELS_HPP
