// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "core/common.hpp"

namespace isaacs {

/// Values and reference/physical derivatives of every basis function at a point set.
/// Rows index points, columns index basis functions.
struct Tabulation {
  Eigen::MatrixXd val, dx, dy, dxx, dxy, dyy;
};

/// Where a Lagrange node sits on the reference triangle.
struct NodeLocation {
  enum Kind { Vertex, Edge, Interior } kind = Interior;
  int entity = -1;    // local vertex or local edge (edge e is opposite vertex e)
  int position = 0;   // for edge nodes: lattice steps from the edge's start vertex (1..p-1)
};

/// Lagrange basis of P_p on the reference triangle with equispaced nodes (i/p, j/p).
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Point2>& nodes() const { return nodes_; }
  const NodeLocation& location(int i) const { return locations_[i]; }

  Tabulation tabulate(const std::vector<Point2>& points) const;
  /// Values only.
  Eigen::VectorXd values(const Point2& xi) const;

 private:
  int degree_;
  std::vector<Point2> nodes_;
  std::vector<NodeLocation> locations_;
  std::vector<std::array<int, 2>> exponents_;
  Eigen::MatrixXd coeffs_;  // column i holds the monomial coefficients of basis function i
};

/// Maps a reference tabulation to physical derivatives on an affine element with inverse Jacobian G.
void to_physical(const Tabulation& ref, const Mat2& inverse_jacobian, Tabulation& out);

}  // namespace isaacs
