// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "surfdarcy/errors.hpp"
#include "surfdarcy/kernels.hpp"

namespace surfdarcy::kernels
{

namespace
{

std::atomic<Isa> &active_slot()
{
  static std::atomic<Isa> slot{detected_isa()};
  return slot;
}

}  // namespace

const char *isa_name(Isa isa) noexcept
{
  switch (isa)
  {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept
{
  switch (isa)
  {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SURFDARCY_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept
{
  if (const char *env = std::getenv("SURFDARCY_ISA"); env && std::strcmp(env, "scalar") == 0)
  {
    return Isa::scalar;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa)
{
  if (!isa_supported(isa))
  {
    throw ConfigError(std::string("kernel variant not supported on this CPU: ") + isa_name(isa));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable &kernel_table(Isa isa)
{
  if (!isa_supported(isa))
  {
    throw ConfigError(std::string("kernel variant not supported on this CPU: ") + isa_name(isa));
  }
#if defined(SURFDARCY_HAVE_AVX2)
  if (isa == Isa::avx2)
  {
    return detail::avx2_table();
  }
#endif
  return detail::scalar_table();
}

double dot(std::span<const double> x, std::span<const double> y)
{
  return kernel_table(active_isa()).dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
  kernel_table(active_isa()).axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x)
{
  kernel_table(active_isa()).scale(alpha, x.data(), x.size());
}

double nrm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void spmv(const CsrView &a, std::span<const double> x, std::span<double> y)
{
  kernel_table(active_isa()).spmv(a, x.data(), y.data());
}

}  // namespace surfdarcy::kernels
