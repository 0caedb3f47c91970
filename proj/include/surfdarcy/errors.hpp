// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_ERRORS_HPP
#define SURFDARCY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace surfdarcy
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Point outside the region where the closest-point map is single valued.
class DomainError : public Error
{
public:
  using Error::Error;
};

class NumericalError : public Error
{
public:
  using Error::Error;
};

/// Invalid user-facing configuration (mesh sizes, orders, tolerances).
class ConfigError : public Error
{
public:
  using Error::Error;
};

class DegenerateMeshError : public Error
{
public:
  using Error::Error;
};

class DegenerateElementError : public Error
{
public:
  using Error::Error;
};

/// Iterative solver ran out of iterations; the last residual is kept.
class ConvergenceError : public Error
{
public:
  ConvergenceError(const std::string &msg, double residual, int iterations)
    : Error(msg), residual_(residual), iterations_(iterations)
  {
  }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

class SingularSystemError : public Error
{
public:
  using Error::Error;
};

class ValueError : public Error
{
public:
  using Error::Error;
};

}  // namespace surfdarcy

#endif  // SURFDARCY_ERRORS_HPP
