// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace isaacs {

namespace {

// Legendre polynomial P_n and its derivative at x in (-1,1).
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = n == 0 ? 1.0 : p1;
  dp = n == 0 ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, "gauss_legendre: need at least one point");
  nodes.assign(n, 0.5);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.5;
}

QuadratureRule quadrature(QuadratureDomain domain, int order) {
  require(order >= 0 && order <= kMaxQuadratureOrder,
          "unsupported quadrature order " + std::to_string(order));
  QuadratureRule rule;
  rule.domain = domain;
  rule.order = order;
  std::vector<double> x, w;

  if (domain == QuadratureDomain::Segment) {
    gauss_legendre((order + 2) / 2, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      rule.barycentric.emplace_back(1.0 - x[i], x[i], 0.0);
      rule.weights.push_back(w[i]);
    }
    return rule;
  }

  if (order <= 1) {
    rule.barycentric.emplace_back(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
    rule.weights.push_back(0.5);
    return rule;
  }
  if (order == 2) {
    const double a = 1.0 / 6.0, b = 2.0 / 3.0;
    rule.barycentric = {{b, a, a}, {a, b, a}, {a, a, b}};
    rule.weights.assign(3, 1.0 / 6.0);
    return rule;
  }
  // Collapsed tensor-product Gauss rule: (u, v) in [0,1]^2 -> (u, (1-u) v), Jacobian (1-u).
  std::vector<double> xv, wv;
  gauss_legendre((order + 3) / 2, x, w);
  gauss_legendre((order + 2) / 2, xv, wv);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < xv.size(); ++j) {
      const double l1 = x[i];
      const double l2 = (1.0 - x[i]) * xv[j];
      rule.barycentric.emplace_back(1.0 - l1 - l2, l1, l2);
      rule.weights.push_back(w[i] * wv[j] * (1.0 - x[i]));
    }
  }
  return rule;
}

}  // namespace isaacs
