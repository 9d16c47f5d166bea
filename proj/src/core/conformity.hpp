// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>

#include "core/fespace.hpp"

namespace isaacs {

/// Piecewise vector polynomial of degree r on a mesh, in the Lagrange basis of each element.
struct VectorField {
  std::shared_ptr<const Mesh> mesh;
  int degree = 1;
  Eigen::MatrixXd x, y;  // rows = elements, columns = local nodes

  VectorField() = default;
  VectorField(std::shared_ptr<const Mesh> m, int r);
};

/// Piecewise gradient of v as a degree p-1 field (exact).
VectorField gradient_field(const FEFunction& v);

double C_T(const VectorField& w, const VectorField& v);

struct VectorNorms {
  double norm = 0.0;        // including the jump seminorm
  double jump = 0.0;        // interior jumps plus boundary tangential traces
  double gradient = 0.0;    // ||grad v||
  double div_curl = 0.0;    // (||div v||^2 + ||curl v||^2)^{1/2}
};
VectorNorms vector_norms(const VectorField& v);
VectorField subtract(const VectorField& a, const VectorField& b);

/// Node rule of the vector enrichment: plain mean without boundary normals, mean normal component
/// when all normals agree within angle_tol, zero otherwise.
Vec2 enrich_node(std::span<const Vec2> values, std::span<const Vec2> boundary_normals, double angle_tol = 1e-10);

/// Continuous field with zero tangential trace on the boundary.
VectorField enrich_vector(const VectorField& w, double angle_tol = 1e-10);

/// Nodal averaging of a discontinuous function into the continuous zero-trace space of the same degree.
FEFunction enrich_scalar(const FEFunction& v);

struct MirandaTalentiGap {
  double hessian = 0.0;    // ||D^2 v||
  double laplacian = 0.0;  // ||Delta v||
  double jump = 0.0;       // |v|_J
};
MirandaTalentiGap miranda_talenti_gap(const FEFunction& v);

}  // namespace isaacs
