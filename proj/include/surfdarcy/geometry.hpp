// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_GEOMETRY_HPP
#define SURFDARCY_GEOMETRY_HPP

#include <functional>
#include <variant>

#include "surfdarcy/vec.hpp"

namespace surfdarcy
{

struct Torus
{
  double major_radius = 1.0;
  double minor_radius = 0.5;
};

struct Sphere
{
  double radius = 1.0;
};

/// A scalar field on R^3 together with its ambient gradient.
struct ScalarField
{
  std::function<double(const Vec3 &)> value;
  std::function<Vec3(const Vec3 &)> gradient;
};

/**
 * Exact closed surface described by its signed distance function.
 *
 * The signed distance is positive outside (away from the torus core circle,
 * away from the sphere center). Closest points are closed form; no projection
 * iteration is involved anywhere.
 */
class ImplicitSurface
{
public:
  using Kind = std::variant<Torus, Sphere>;

  static ImplicitSurface torus(double major_radius, double minor_radius,
                               double tolerance = 1e-12);
  static ImplicitSurface sphere(double radius, double tolerance = 1e-12);

  const Kind &kind() const noexcept { return kind_; }
  bool is_torus() const noexcept { return std::holds_alternative<Torus>(kind_); }
  double tolerance() const noexcept { return tolerance_; }

  double signed_distance(const Vec3 &x) const;
  Vec3 closest_point(const Vec3 &x) const;

  /// Unit normal; equals the gradient of the signed distance, so it is also
  /// defined off the surface where it agrees with the normal at the closest point.
  Vec3 normal(const Vec3 &x) const;

  /// I - n n^T at x.
  Mat3 tangent_projector(const Vec3 &x) const;

  /// Hessian of the signed distance. Diagnostics only.
  Mat3 curvature_tensor(const Vec3 &x) const;

  /// Derivative of the closest-point map, P - rho * kappa.
  Mat3 closest_point_jacobian(const Vec3 &x) const;

  /// Ambient gradient of field o p at x (the gradient of the extension).
  Vec3 extension_gradient(const ScalarField &field, const Vec3 &x) const;

  /// P(x) grad(field o p)(x) for x on the surface.
  Vec3 surface_gradient_of_scalar(const ScalarField &field, const Vec3 &x_on_surface) const;

  /// Surface area in closed form.
  double area() const;

private:
  ImplicitSurface(Kind kind, double tolerance) : kind_(kind), tolerance_(tolerance) {}

  Kind kind_;
  double tolerance_;
};

/// Point on a torus from its major angle theta and minor angle phi.
Vec3 torus_point(const Torus &t, double theta, double phi);

}  // namespace surfdarcy

#endif  // SURFDARCY_GEOMETRY_HPP
