// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/geometry.hpp"

#include <numbers>
#include <string>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

namespace
{

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};

// Torus frame at x: w is the horizontal offset from the z-axis, c the
// closest point on the core circle, q = x - c.
struct TorusFrame
{
  double d;   // |w|
  Vec3 c;
  Vec3 q;
  double s;   // |q|
};

TorusFrame torus_frame(const Torus &t, const Vec3 &x, double tol)
{
  const double d = std::hypot(x.x, x.y);
  if (d < tol)
  {
    throw DomainError("point on the torus symmetry axis has no unique closest point");
  }
  const Vec3 c{t.major_radius * x.x / d, t.major_radius * x.y / d, 0.0};
  const Vec3 q = x - c;
  const double s = norm(q);
  if (s < tol)
  {
    throw NumericalError("point on the torus core circle has no unique closest point");
  }
  return {d, c, q, s};
}

double sphere_radius_of(const Vec3 &x, double tol)
{
  const double len = norm(x);
  if (len < tol)
  {
    throw DomainError("sphere center has no unique closest point");
  }
  return len;
}

}  // namespace

ImplicitSurface ImplicitSurface::torus(double major_radius, double minor_radius, double tolerance)
{
  if (!(minor_radius > 0.0 && minor_radius < major_radius))
  {
    throw ConfigError("torus requires 0 < minor_radius < major_radius");
  }
  return ImplicitSurface(Torus{major_radius, minor_radius}, tolerance);
}

ImplicitSurface ImplicitSurface::sphere(double radius, double tolerance)
{
  if (!(radius > 0.0))
  {
    throw ConfigError("sphere requires radius > 0");
  }
  return ImplicitSurface(Sphere{radius}, tolerance);
}

double ImplicitSurface::signed_distance(const Vec3 &x) const
{
  return std::visit(
      Overloaded{[&](const Torus &t) { return torus_frame(t, x, tolerance_).s - t.minor_radius; },
                 [&](const Sphere &s) { return sphere_radius_of(x, tolerance_) - s.radius; }},
      kind_);
}

Vec3 ImplicitSurface::closest_point(const Vec3 &x) const
{
  return std::visit(Overloaded{[&](const Torus &t) {
                                 const auto f = torus_frame(t, x, tolerance_);
                                 return f.c + (t.minor_radius / f.s) * f.q;
                               },
                               [&](const Sphere &s) {
                                 return (s.radius / sphere_radius_of(x, tolerance_)) * x;
                               }},
                    kind_);
}

Vec3 ImplicitSurface::normal(const Vec3 &x) const
{
  return std::visit(Overloaded{[&](const Torus &t) {
                                 const auto f = torus_frame(t, x, tolerance_);
                                 return f.q / f.s;
                               },
                               [&](const Sphere &) { return x / sphere_radius_of(x, tolerance_); }},
                    kind_);
}

Mat3 ImplicitSurface::tangent_projector(const Vec3 &x) const
{
  const Vec3 n = normal(x);
  return Mat3::identity() - Mat3::outer(n, n);
}

Mat3 ImplicitSurface::curvature_tensor(const Vec3 &x) const
{
  return std::visit(
      Overloaded{[&](const Torus &t) {
                   // Hessian of |x - c(x)|: (I - qq^T - (R/d) a a^T) / s with a the
                   // azimuthal direction; q is orthogonal to a so the product is symmetric.
                   const auto f = torus_frame(t, x, tolerance_);
                   const Vec3 qhat = f.q / f.s;
                   const Vec3 azimuth{-x.y / f.d, x.x / f.d, 0.0};
                   const Mat3 m = Mat3::identity() - Mat3::outer(qhat, qhat) -
                                  (t.major_radius / f.d) * Mat3::outer(azimuth, azimuth);
                   return (1.0 / f.s) * m;
                 },
                 [&](const Sphere &) {
                   const double len = sphere_radius_of(x, tolerance_);
                   const Vec3 xhat = x / len;
                   return (1.0 / len) * (Mat3::identity() - Mat3::outer(xhat, xhat));
                 }},
      kind_);
}

Mat3 ImplicitSurface::closest_point_jacobian(const Vec3 &x) const
{
  // p(x) = x - rho(x) grad rho(x)  =>  Dp = I - n n^T - rho * Hess(rho)
  return tangent_projector(x) - signed_distance(x) * curvature_tensor(x);
}

Vec3 ImplicitSurface::extension_gradient(const ScalarField &field, const Vec3 &x) const
{
  return closest_point_jacobian(x).transposed() * field.gradient(closest_point(x));
}

Vec3 ImplicitSurface::surface_gradient_of_scalar(const ScalarField &field,
                                                 const Vec3 &x_on_surface) const
{
  return tangent_projector(x_on_surface) * extension_gradient(field, x_on_surface);
}

double ImplicitSurface::area() const
{
  constexpr double pi = std::numbers::pi;
  return std::visit(
      Overloaded{[](const Torus &t) { return 4.0 * pi * pi * t.major_radius * t.minor_radius; },
                 [](const Sphere &s) { return 4.0 * pi * s.radius * s.radius; }},
      kind_);
}

Vec3 torus_point(const Torus &t, double theta, double phi)
{
  const double ring = t.major_radius + t.minor_radius * std::cos(phi);
  return {ring * std::cos(theta), ring * std::sin(theta), t.minor_radius * std::sin(phi)};
}

}  // namespace surfdarcy
