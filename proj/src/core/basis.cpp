// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/basis.hpp"

#include <cmath>
#include <string>

namespace isaacs {

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  require(degree >= 0 && degree <= 8, "unsupported basis degree " + std::to_string(degree));
  const int p = degree;
  for (int a = 0; a <= p; ++a)
    for (int b = 0; a + b <= p; ++b) exponents_.push_back({a, b});

  if (p == 0) {
    nodes_.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    locations_.push_back({NodeLocation::Interior, -1, 0});
  } else {
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i + j <= p; ++i) {
        nodes_.emplace_back(static_cast<double>(i) / p, static_cast<double>(j) / p);
        const int lat[3] = {p - i - j, i, j};  // lattice barycentric coordinates
        NodeLocation loc;
        int zeros = 0;
        for (int v = 0; v < 3; ++v) zeros += lat[v] == 0;
        if (zeros == 2) {
          loc.kind = NodeLocation::Vertex;
          for (int v = 0; v < 3; ++v)
            if (lat[v] == p) loc.entity = v;
        } else if (zeros == 1) {
          loc.kind = NodeLocation::Edge;
          for (int e = 0; e < 3; ++e)
            if (lat[e] == 0) loc.entity = e;
          loc.position = lat[(loc.entity + 2) % 3];  // distance from start vertex (e+1) = weight of end vertex
        }
        locations_.push_back(loc);
      }
    }
  }

  const int n = size();
  Eigen::MatrixXd vandermonde(n, n);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < n; ++m)
      vandermonde(i, m) = std::pow(nodes_[i].x(), exponents_[m][0]) * std::pow(nodes_[i].y(), exponents_[m][1]);
  coeffs_ = vandermonde.partialPivLu().inverse();
}

Tabulation ReferenceBasis::tabulate(const std::vector<Point2>& points) const {
  const int n = size();
  const int np = static_cast<int>(points.size());
  Eigen::MatrixXd mv(np, n), mx(np, n), my(np, n), mxx(np, n), mxy(np, n), myy(np, n);
  auto pw = [](double x, int k) { return k < 0 ? 0.0 : std::pow(x, k); };
  for (int q = 0; q < np; ++q) {
    const double x = points[q].x(), y = points[q].y();
    for (int m = 0; m < n; ++m) {
      const int a = exponents_[m][0], b = exponents_[m][1];
      mv(q, m) = pw(x, a) * pw(y, b);
      mx(q, m) = a * pw(x, a - 1) * pw(y, b);
      my(q, m) = b * pw(x, a) * pw(y, b - 1);
      mxx(q, m) = a * (a - 1) * pw(x, a - 2) * pw(y, b);
      mxy(q, m) = a * b * pw(x, a - 1) * pw(y, b - 1);
      myy(q, m) = b * (b - 1) * pw(x, a) * pw(y, b - 2);
    }
  }
  Tabulation t;
  t.val = mv * coeffs_;
  t.dx = mx * coeffs_;
  t.dy = my * coeffs_;
  t.dxx = mxx * coeffs_;
  t.dxy = mxy * coeffs_;
  t.dyy = myy * coeffs_;
  return t;
}

Eigen::VectorXd ReferenceBasis::values(const Point2& xi) const {
  return tabulate({xi}).val.row(0).transpose();
}

void to_physical(const Tabulation& ref, const Mat2& g, Tabulation& out) {
  // grad_x = G^T grad_xi, Hess_x = G^T Hess_xi G with G the inverse Jacobian.
  out.val = ref.val;
  out.dx = g(0, 0) * ref.dx + g(1, 0) * ref.dy;
  out.dy = g(0, 1) * ref.dx + g(1, 1) * ref.dy;
  out.dxx = g(0, 0) * g(0, 0) * ref.dxx + 2.0 * g(0, 0) * g(1, 0) * ref.dxy + g(1, 0) * g(1, 0) * ref.dyy;
  out.dxy = g(0, 0) * g(0, 1) * ref.dxx + (g(0, 0) * g(1, 1) + g(1, 0) * g(0, 1)) * ref.dxy +
            g(1, 0) * g(1, 1) * ref.dyy;
  out.dyy = g(0, 1) * g(0, 1) * ref.dxx + 2.0 * g(0, 1) * g(1, 1) * ref.dxy + g(1, 1) * g(1, 1) * ref.dyy;
}

}  // namespace isaacs
