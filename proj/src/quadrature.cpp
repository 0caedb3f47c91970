// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

namespace
{

// Orbit weights below are normalized to sum to 1 and scaled by the area at the end.
class RuleBuilder
{
public:
  explicit RuleBuilder(int degree) { rule_.degree = degree; }

  RuleBuilder &centroid(double w)
  {
    add(1.0 / 3.0, 1.0 / 3.0, w);
    return *this;
  }
  // Points (a, a), (1 - 2a, a), (a, 1 - 2a).
  RuleBuilder &orbit3(double a, double w)
  {
    const double b = 1.0 - 2.0 * a;
    add(a, a, w);
    add(b, a, w);
    add(a, b, w);
    return *this;
  }
  // All six permutations of the barycentric triple (a, b, 1 - a - b).
  RuleBuilder &orbit6(double a, double b, double w)
  {
    const double c = 1.0 - a - b;
    add(a, b, w);
    add(b, a, w);
    add(a, c, w);
    add(c, a, w);
    add(b, c, w);
    add(c, b, w);
    return *this;
  }
  QuadratureRule build()
  {
    for (auto &w : rule_.weights)
    {
      w *= 0.5;
    }
    return std::move(rule_);
  }

private:
  void add(double xi, double eta, double w)
  {
    rule_.points.push_back({xi, eta});
    rule_.weights.push_back(w);
  }
  QuadratureRule rule_;
};

QuadratureRule collapsed_gauss(int degree)
{
  const int n = (degree + 3) / 2;
  std::vector<double> x, w;
  gauss_legendre_unit(n, x, w);
  QuadratureRule rule;
  rule.degree = degree;
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      const double u = x[i];
      rule.points.push_back({u, x[j] * (1.0 - u)});
      rule.weights.push_back(w[i] * w[j] * (1.0 - u));
    }
  }
  return rule;
}

std::array<QuadratureRule, 15> build_table()
{
  const auto r1 = RuleBuilder(1).centroid(1.0).build();
  const auto r2 = RuleBuilder(2).orbit3(1.0 / 6.0, 1.0 / 3.0).build();
  const auto r4 = RuleBuilder(4)
                      .orbit3(0.44594849091596488632, 0.22338158967801146570)
                      .orbit3(0.091576213509770743460, 0.10995174365532186764)
                      .build();
  const auto r5 = RuleBuilder(5)
                      .centroid(0.225)
                      .orbit3(0.47014206410511508977, 0.13239415278850618074)
                      .orbit3(0.10128650732345633880, 0.12593918054482715260)
                      .build();
  const auto r6 = RuleBuilder(6)
                      .orbit3(0.24928674517091042129, 0.11678627572637936603)
                      .orbit3(0.063089014491502228340, 0.050844906370206816921)
                      .orbit6(0.053145049844816947353, 0.31035245103378440542,
                              0.082851075618373575194)
                      .build();
  const auto r8 = RuleBuilder(8)
                      .centroid(0.14431560767778716825)
                      .orbit3(0.45929258829272315603, 0.095091634267284624794)
                      .orbit3(0.17056930775176020662, 0.10321737053471825028)
                      .orbit3(0.050547228317030975458, 0.032458497623198080311)
                      .orbit6(0.0083947774099576053372, 0.26311282963463811342,
                              0.027230314174434994265)
                      .build();
  std::array<QuadratureRule, 15> table;
  table[0] = r1;
  table[1] = r1;
  table[2] = r2;
  table[3] = r4;
  table[4] = r4;
  table[5] = r5;
  table[6] = r6;
  table[7] = r8;
  table[8] = r8;
  for (int d = 9; d <= 14; ++d)
  {
    table[d] = collapsed_gauss(d);
  }
  return table;
}

}  // namespace

void gauss_legendre_unit(int n, std::vector<double> &points, std::vector<double> &weights)
{
  points.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
  {
    // Newton on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    points[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

const QuadratureRule &quadrature_for(int degree)
{
  static const std::array<QuadratureRule, 15> table = build_table();
  if (degree < 0 || degree > 14)
  {
    throw ConfigError("no quadrature rule for degree " + std::to_string(degree) +
                      " (supported: 0..14)");
  }
  return table[degree];
}

}  // namespace surfdarcy
