// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "core/common.hpp"

namespace isaacs {

enum class QuadratureDomain { Triangle, Segment };

/// Quadrature on the reference triangle (0,0),(1,0),(0,1) or the unit segment [0,1].
/// Points are stored in barycentric coordinates; segments use the first two entries.
struct QuadratureRule {
  QuadratureDomain domain = QuadratureDomain::Triangle;
  int order = 0;
  std::vector<Eigen::Vector3d> barycentric;
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
  /// Reference triangle coordinates (lambda_1, lambda_2).
  Point2 point(int i) const { return Point2(barycentric[i][1], barycentric[i][2]); }
  /// Segment parameter in [0,1].
  double parameter(int i) const { return barycentric[i][1]; }
};

constexpr int kMaxQuadratureOrder = 40;

/// Rule exact for polynomials of total degree <= order. Throws for order < 0 or > kMaxQuadratureOrder.
QuadratureRule quadrature(QuadratureDomain domain, int order);

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace isaacs
