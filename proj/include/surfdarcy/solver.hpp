// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_SOLVER_HPP
#define SURFDARCY_SOLVER_HPP

#include <span>
#include <string>
#include <vector>

#include "surfdarcy/sparse.hpp"

namespace surfdarcy
{

enum class SolverMethod
{
  krylov_gmres,
  dense_lu_fallback
};

std::string to_string(SolverMethod method);
SolverMethod solver_method_from_string(const std::string &name);

struct SolverConfig
{
  SolverMethod method = SolverMethod::krylov_gmres;
  double rel_tol = 1e-10;
  int max_iters = 10000;
  int restart = 200;

  /// Throws ConfigError unless rel_tol is in (0, 1e-4] and restart >= 10.
  void validate() const;
};

struct SolveStats
{
  SolverMethod method = SolverMethod::krylov_gmres;
  int iterations = 0;
  double relative_residual = 0.0;  // ||b - A x|| / ||b||, recomputed after the solve
  double seconds = 0.0;
};

struct SolveResult
{
  std::vector<double> x;
  SolveStats stats;
};

/// Largest system accepted by the dense fallback.
inline constexpr int kDenseLuMaxSize = 50000;

SolveResult solve(const CsrMatrix &a, std::span<const double> b, const SolverConfig &config = {});

/**
 * Restarted GMRES, zero initial guess, right preconditioned with the inverse
 * diagonal (rows with a zero diagonal, such as the mean multiplier, are left
 * unpreconditioned). Modified Gram-Schmidt with Givens rotations. Throws
 * ConvergenceError when max_iters is exhausted.
 */
SolveResult gmres(const CsrMatrix &a, std::span<const double> b, const SolverConfig &config);

/// Dense LU with partial pivoting. Throws SingularSystemError on a zero pivot.
SolveResult dense_lu(const CsrMatrix &a, std::span<const double> b);

/// ||b - A x|| / ||b|| evaluated with the scalar reference kernels.
double relative_residual(const CsrMatrix &a, std::span<const double> x, std::span<const double> b);

}  // namespace surfdarcy

#endif  // SURFDARCY_SOLVER_HPP
