// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/solver.hpp"

#include <chrono>
#include <cmath>

#include "surfdarcy/errors.hpp"
#include "surfdarcy/kernels.hpp"

namespace surfdarcy
{

namespace
{

double seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(SolverMethod method)
{
  return method == SolverMethod::krylov_gmres ? "gmres" : "lu";
}

SolverMethod solver_method_from_string(const std::string &name)
{
  if (name == "gmres" || name == "krylov_gmres")
  {
    return SolverMethod::krylov_gmres;
  }
  if (name == "lu" || name == "dense_lu" || name == "dense_lu_fallback")
  {
    return SolverMethod::dense_lu_fallback;
  }
  throw ConfigError("unknown solver method '" + name + "' (expected gmres or lu)");
}

void SolverConfig::validate() const
{
  if (!(rel_tol > 0.0 && rel_tol <= 1e-4))
  {
    throw ConfigError("rel_tol must lie in (0, 1e-4]");
  }
  if (restart < 10)
  {
    throw ConfigError("restart must be at least 10");
  }
  if (max_iters < 1)
  {
    throw ConfigError("max_iters must be positive");
  }
}

double relative_residual(const CsrMatrix &a, std::span<const double> x, std::span<const double> b)
{
  const auto &ref = kernels::kernel_table(kernels::Isa::scalar);
  std::vector<double> r(a.rows());
  ref.spmv(a.view(), x.data(), r.data());
  double rr = 0.0, bb = 0.0;
  for (int i = 0; i < a.rows(); ++i)
  {
    rr += (b[i] - r[i]) * (b[i] - r[i]);
    bb += b[i] * b[i];
  }
  if (bb == 0.0)
  {
    return std::sqrt(rr);
  }
  return std::sqrt(rr / bb);
}

SolveResult solve(const CsrMatrix &a, std::span<const double> b, const SolverConfig &config)
{
  config.validate();
  return config.method == SolverMethod::krylov_gmres ? gmres(a, b, config) : dense_lu(a, b);
}

SolveResult gmres(const CsrMatrix &a, std::span<const double> b, const SolverConfig &config)
{
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = a.rows();
  const int m = config.restart;
  if (a.cols() != n || static_cast<int>(b.size()) != n)
  {
    throw ValueError("GMRES needs a square system matching the right-hand side");
  }

  SolveResult result;
  result.x.assign(n, 0.0);
  result.stats.method = SolverMethod::krylov_gmres;
  const double bnorm = kernels::nrm2(b);
  if (bnorm == 0.0)
  {
    return result;
  }

  std::vector<double> inv_diag = a.diagonal();
  for (double &d : inv_diag)
  {
    d = (d != 0.0) ? 1.0 / d : 1.0;
  }

  std::vector<double> basis(static_cast<std::size_t>(m + 1) * n);
  auto v = [&](int j) { return std::span<double>(basis).subspan(static_cast<std::size_t>(j) * n, n); };
  std::vector<double> hess(static_cast<std::size_t>(m + 1) * m, 0.0);  // column major
  auto h = [&](int i, int j) -> double & { return hess[static_cast<std::size_t>(j) * (m + 1) + i]; };
  std::vector<double> cs(m), sn(m), g(m + 1), y(m), z(n), w(n), r(n);

  auto residual = [&]() {
    a.multiply(result.x, r);
    for (int i = 0; i < n; ++i)
    {
      r[i] = b[i] - r[i];
    }
    return kernels::nrm2(r);
  };

  double beta = bnorm;
  std::copy(b.begin(), b.end(), r.begin());
  int iterations = 0;
  while (true)
  {
    auto v0 = v(0);
    std::copy(r.begin(), r.end(), v0.begin());
    kernels::scale(1.0 / beta, v0);
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    for (; k < m && iterations < config.max_iters; ++k)
    {
      const auto vk = v(k);
      for (int i = 0; i < n; ++i)
      {
        z[i] = inv_diag[i] * vk[i];
      }
      a.multiply(z, w);
      for (int i = 0; i <= k; ++i)
      {
        h(i, k) = kernels::dot(w, v(i));
        kernels::axpy(-h(i, k), v(i), w);
      }
      h(k + 1, k) = kernels::nrm2(w);
      ++iterations;
      const bool breakdown = h(k + 1, k) == 0.0;
      if (!breakdown)
      {
        auto vnext = v(k + 1);
        std::copy(w.begin(), w.end(), vnext.begin());
        kernels::scale(1.0 / h(k + 1, k), vnext);
      }
      for (int i = 0; i < k; ++i)
      {
        const double t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
        h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
        h(i, k) = t;
      }
      const double denom = std::hypot(h(k, k), h(k + 1, k));
      cs[k] = h(k, k) / denom;
      sn[k] = h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      if (breakdown || std::abs(g[k + 1]) <= config.rel_tol * bnorm)
      {
        ++k;
        break;
      }
    }

    // x += M^{-1} V y with H y = g.
    for (int i = k - 1; i >= 0; --i)
    {
      double s = g[i];
      for (int j = i + 1; j < k; ++j)
      {
        s -= h(i, j) * y[j];
      }
      y[i] = s / h(i, i);
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (int j = 0; j < k; ++j)
    {
      kernels::axpy(y[j], v(j), z);
    }
    for (int i = 0; i < n; ++i)
    {
      result.x[i] += inv_diag[i] * z[i];
    }

    beta = residual();
    if (beta <= config.rel_tol * bnorm)
    {
      break;
    }
    if (iterations >= config.max_iters)
    {
      throw ConvergenceError("GMRES did not converge in " + std::to_string(iterations) +
                                 " iterations (relative residual " + std::to_string(beta / bnorm) +
                                 ")",
                             beta / bnorm, iterations);
    }
  }
  result.stats.iterations = iterations;
  result.stats.relative_residual = beta / bnorm;
  result.stats.seconds = seconds_since(start);
  return result;
}

SolveResult dense_lu(const CsrMatrix &a, std::span<const double> b)
{
  const auto start = std::chrono::steady_clock::now();
  const int n = a.rows();
  if (a.cols() != n || static_cast<int>(b.size()) != n)
  {
    throw ValueError("dense LU needs a square system matching the right-hand side");
  }
  if (n > kDenseLuMaxSize)
  {
    throw ConfigError("system too large for the dense LU fallback");
  }
  std::vector<double> dense = a.to_dense_column_major();
  SolveResult result;
  result.x.assign(b.begin(), b.end());
  if (!kernels::kernel_table(kernels::active_isa()).lu_solve(dense.data(), n, result.x.data()))
  {
    throw SingularSystemError("dense LU hit an exactly zero pivot");
  }
  result.stats.method = SolverMethod::dense_lu_fallback;
  result.stats.iterations = 1;
  result.stats.relative_residual = relative_residual(a, result.x, b);
  result.stats.seconds = seconds_since(start);
  return result;
}

}  // namespace surfdarcy
