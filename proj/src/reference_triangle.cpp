// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/reference_triangle.hpp"

#include <cassert>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

namespace
{

// Silvester polynomial P_a(l) = prod_{m<a} (k l - m) / (a - m) and its derivative.
struct Silvester
{
  double value;
  double derivative;
};

Silvester silvester(int k, int a, double lambda)
{
  double value = 1.0;
  double derivative = 0.0;
  for (int m = 0; m < a; ++m)
  {
    const double factor = (k * lambda - m) / (a - m);
    const double dfactor = static_cast<double>(k) / (a - m);
    derivative = derivative * factor + value * dfactor;
    value *= factor;
  }
  return {value, derivative};
}

}  // namespace

ReferenceTriangle::ReferenceTriangle(int order) : order_(order)
{
  if (order < 1 || order > 6)
  {
    throw ConfigError("reference triangle order must be in [1, 6]");
  }
  const int k = order;
  auto push = [&](int i, int j) { bary_.push_back({k - i - j, i, j}); };
  push(0, 0);
  push(k, 0);
  push(0, k);
  for (int t = 1; t < k; ++t)
  {
    push(t, 0);
  }
  for (int t = 1; t < k; ++t)
  {
    push(k - t, t);
  }
  for (int t = 1; t < k; ++t)
  {
    push(0, k - t);
  }
  for (int j = 1; j < k; ++j)
  {
    for (int i = 1; i + j < k; ++i)
    {
      push(i, j);
    }
  }
  nodes_.reserve(bary_.size());
  for (const auto &b : bary_)
  {
    nodes_.push_back({static_cast<double>(b[1]) / k, static_cast<double>(b[2]) / k});
  }
  assert(static_cast<int>(nodes_.size()) == (k + 1) * (k + 2) / 2);
}

void ReferenceTriangle::eval(const Vec2 &xi, std::span<double> values) const
{
  const double l0 = 1.0 - xi[0] - xi[1];
  for (std::size_t n = 0; n < bary_.size(); ++n)
  {
    const auto &b = bary_[n];
    values[n] = silvester(order_, b[0], l0).value * silvester(order_, b[1], xi[0]).value *
                silvester(order_, b[2], xi[1]).value;
  }
}

void ReferenceTriangle::eval_gradients(const Vec2 &xi, std::span<Vec2> gradients) const
{
  const double l0 = 1.0 - xi[0] - xi[1];
  for (std::size_t n = 0; n < bary_.size(); ++n)
  {
    const auto &b = bary_[n];
    const auto p0 = silvester(order_, b[0], l0);
    const auto p1 = silvester(order_, b[1], xi[0]);
    const auto p2 = silvester(order_, b[2], xi[1]);
    gradients[n] = {-p0.derivative * p1.value * p2.value + p0.value * p1.derivative * p2.value,
                    -p0.derivative * p1.value * p2.value + p0.value * p1.value * p2.derivative};
  }
}

}  // namespace surfdarcy
