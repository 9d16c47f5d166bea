// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "core/basis.hpp"
#include "core/mesh.hpp"
#include "core/quadrature.hpp"

namespace isaacs {

/// Piecewise P_p space: s = 0 fully discontinuous, s = 1 continuous with zero trace.
class FESpace {
 public:
  FESpace(std::shared_ptr<const Mesh> mesh, int s, int p);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int continuity() const { return s_; }
  int degree() const { return p_; }
  const ReferenceBasis& basis() const { return basis_; }
  int num_local() const { return basis_.size(); }
  int num_dofs() const { return num_dofs_; }
  /// Global index of each local basis function of element k; -1 for constrained boundary nodes.
  std::span<const int> element_dofs(int k) const {
    return {dofs_.data() + static_cast<std::size_t>(k) * num_local(), static_cast<std::size_t>(num_local())};
  }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int s_, p_;
  ReferenceBasis basis_;
  int num_dofs_ = 0;
  std::vector<int> dofs_;
};

struct FEFunction {
  std::shared_ptr<const FESpace> space;
  Eigen::VectorXd coeffs;

  FEFunction() = default;
  explicit FEFunction(std::shared_ptr<const FESpace> sp)
      : space(std::move(sp)), coeffs(Eigen::VectorXd::Zero(space->num_dofs())) {}
  /// Coefficients of the local basis on element k.
  Eigen::VectorXd local(int k) const;
};

/// Reference tabulation of the basis at element quadrature points.
struct ElementTables {
  QuadratureRule rule;
  Tabulation ref;
  ElementTables(const ReferenceBasis& basis, int order);
};

/// Reference tabulation at face quadrature points for every local edge and both orientations.
/// The face parameter runs from the face's lower global vertex to its higher one.
struct FaceTables {
  QuadratureRule rule;
  std::array<std::array<Tabulation, 2>, 3> ref;  // [local edge][reversed]
  FaceTables(const ReferenceBasis& basis, int order);
};

/// Physical basis values, gradients and Hessians at the element quadrature points.
void element_tabulation(const FESpace& space, const ElementTables& tables, int k, Tabulation& out);
/// Same for the trace from side `side` (0 or 1) of face f.
void face_tabulation(const FESpace& space, const FaceTables& tables, int f, int side, Tabulation& out);
Point2 face_point(const Mesh& mesh, int f, double t);

/// Pointwise values of a FE function on element k at reference points.
struct PointValues {
  Eigen::VectorXd val, dx, dy, dxx, dxy, dyy;
};
PointValues eval_function(const FEFunction& v, int k, const std::vector<Point2>& ref_points);

/// Traces on a face at parameters t in [0,1] (from the lower global vertex).
/// Interior faces: jump = side0 - side1, avg = mean. Boundary faces: both equal the trace.
struct FaceJumpAvg {
  Eigen::VectorXd jump, avg;
  Eigen::MatrixXd jump_grad, avg_grad;  // rows = points, columns = x, y
};
FaceJumpAvg face_jump_avg(const FEFunction& v, int f, const std::vector<double>& params);

struct Norms {
  double norm_T = 0.0;     // full H^2-type norm
  double jump = 0.0;       // |v|_J
  double lambda_T = 0.0;   // |v|_{lambda,T}
  double hessian = 0.0;    // ||D^2 v||
  double laplacian = 0.0;  // ||Delta v||
};
Norms norms(const FEFunction& v, double lambda);

using ScalarField = std::function<double(const Point2&)>;
/// Nodal Lagrange interpolation; constrained boundary nodes of s = 1 spaces are skipped.
FEFunction interpolate(std::shared_ptr<const FESpace> space, const ScalarField& f);

/// Exact transfer of v onto a refinement of its mesh (children know their parents).
FEFunction prolongate(const FEFunction& v, std::shared_ptr<const FESpace> fine);

}  // namespace isaacs
