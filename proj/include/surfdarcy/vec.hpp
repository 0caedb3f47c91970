// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SURFDARCY_VEC_HPP
#define SURFDARCY_VEC_HPP

#include <array>
#include <cmath>

namespace surfdarcy
{

// Small fixed-size linear algebra for points, tangents and 3x3 / 3x2 maps.

struct Vec3
{
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double &operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 &operator+=(const Vec3 &o)
  {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o)
  {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s)
  {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
{
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }

/// Row-major 3x3 matrix.
struct Mat3
{
  std::array<std::array<double, 3>, 3> a{};

  constexpr double operator()(int i, int j) const { return a[i][j]; }
  constexpr double &operator()(int i, int j) { return a[i][j]; }

  static constexpr Mat3 identity()
  {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  static constexpr Mat3 outer(const Vec3 &u, const Vec3 &v)
  {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(i, j) = u[i] * v[j];
    return m;
  }
  constexpr Mat3 transposed() const
  {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(i, j) = a[j][i];
    return m;
  }
  constexpr double trace() const { return a[0][0] + a[1][1] + a[2][2]; }
};

constexpr Mat3 operator+(const Mat3 &l, const Mat3 &r)
{
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = l(i, j) + r(i, j);
  return m;
}
constexpr Mat3 operator-(const Mat3 &l, const Mat3 &r)
{
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = l(i, j) - r(i, j);
  return m;
}
constexpr Mat3 operator*(double s, const Mat3 &r)
{
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = s * r(i, j);
  return m;
}
constexpr Mat3 operator*(const Mat3 &l, const Mat3 &r)
{
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j) + l(i, 2) * r(2, j);
  return m;
}
constexpr Vec3 operator*(const Mat3 &m, const Vec3 &v)
{
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

/// Jacobian of a surface parametrization: two tangent columns.
struct Mat32
{
  Vec3 col0, col1;
};

/// Reference-plane point or gradient.
using Vec2 = std::array<double, 2>;

}  // namespace surfdarcy

#endif  // SURFDARCY_VEC_HPP
