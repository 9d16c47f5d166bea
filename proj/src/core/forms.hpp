// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "core/fespace.hpp"
#include "core/problem.hpp"

namespace isaacs {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct MethodParams {
  int s = 0;
  int p = 2;
  int q = -1;            // lifting degree; negative selects p - 2
  double theta = 0.5;
  int chi = 0;
  double sigma = -1.0;   // negative selects 10 p^2; zero switches the term off
  double rho = -1.0;     // negative selects 10 p^4
  double lambda = 0.0;

  /// Fills defaults and validates.
  MethodParams resolved() const;
};

/// Open interval of theta for which the stabilized form is strongly monotone, given the Cordes constant nu.
struct ThetaWindow {
  double lower = 0.0, upper = 0.0;
};
ThetaWindow theta_window(double nu);
/// theta - (1 - nu) / (4 (1 - theta)).
double monotonicity_mu(double theta, double nu);

struct SparseSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

/// Traces of all local basis functions of the elements adjacent to a face, at face quadrature points.
/// Columns are the side-0 basis followed by the side-1 basis (interior faces only).
struct FaceTrace {
  bool interior = false;
  double h = 0.0;
  Point2 normal, tangent;
  Eigen::VectorXd weights;              // physical
  std::vector<int> dofs;                // global, -1 if constrained
  Eigen::MatrixXd jump, jump_dn, jump_dt;  // [[v]], [[grad v . n]], [[grad v . t]]
  Eigen::MatrixXd avg, avg_dn;             // {v}, {grad v . n}
  Eigen::MatrixXd avg_tn, avg_tt;          // {t^T D^2 v n}, {t^T D^2 v t}
};
void face_trace(const FESpace& space, const FaceTables& tables, int f, FaceTrace& out);

/// Weights of the terms of a symmetric bilinear form assembled by assemble_bilinear.
struct BilinearTerms {
  double hessian = 0.0;       // int D^2 w : D^2 v
  double laplacian = 0.0;     // int Lap w Lap v
  double laplacian_mass = 0.0;  // int (Lap w v + w Lap v)
  double gradient = 0.0;      // int grad w . grad v
  double mass = 0.0;          // int w v
  double face_hessian = 0.0;  // the face terms shared by S_T and B_star
  double face_lambda = 0.0;   // coefficient of the two lambda face groups of B_star
  double sigma = 0.0;         // J_T gradient-jump penalty
  double rho = 0.0;           // J_T value-jump penalty
};
SparseMatrix assemble_bilinear(const FESpace& space, const BilinearTerms& terms);

using ExtendedVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// a x (minus `subtract` if given) with long double accumulation.
ExtendedVector multiply_extended(const SparseMatrix& a, const ExtendedVector& x,
                                 const Eigen::VectorXd* subtract = nullptr);

BilinearTerms stabilization_terms();                          // S_T
BilinearTerms bstar_terms(double lambda);                     // B_star
BilinearTerms penalty_terms(double sigma, double rho);        // J_T
BilinearTerms operator_product_terms(double lambda);          // int L_lambda w L_lambda v (piecewise)

double S_T(const FEFunction& w, const FEFunction& v);
double B_star(const FEFunction& w, const FEFunction& v, double lambda);
double J_T(const FEFunction& w, const FEFunction& v, double sigma, double rho);
double LL_product(const FEFunction& w, const FEFunction& v, double lambda);

/// Lifting of face data g (values at the quadrature points of `rule_order`) onto the two elements
/// adjacent to interior face f, in the degree-q Lagrange basis of each element.
struct Lifting {
  int q = 0;
  Eigen::VectorXd side0, side1;
};
Lifting lift_face(const FESpace& space, int f, const std::vector<double>& g, int q, int rule_order);

/// Values of L_{lambda,T} phi for every basis function touching element k, at element quadrature points.
struct TestOperator {
  std::vector<int> dofs;  // global, -1 if constrained
  Eigen::MatrixXd table;  // rows = quadrature points
};
std::vector<TestOperator> build_test_operators(const FESpace& space, const ElementTables& tables,
                                               const MethodParams& params);

/// Delta_T v at the element quadrature points (rows = elements).
Eigen::MatrixXd lifted_laplacian(const FEFunction& v, const MethodParams& params, int quadrature_order);

struct FrozenControls {
  int points_per_element = 0;
  std::vector<int> alpha, beta;  // element-major
};

/// Residual of A_T(w; phi_i) together with the rhs it would have at the selected controls.
struct Evaluation {
  Eigen::VectorXd residual;
  Eigen::VectorXd rhs;
  FrozenControls controls;
  double scaled_norm() const;
};

/// Discrete nonlinear operator on one mesh.
class Discretization {
 public:
  Discretization(std::shared_ptr<const FESpace> space, std::shared_ptr<const IsaacsProblem> problem,
                 const MethodParams& params);

  const FESpace& space() const { return *space_; }
  const std::shared_ptr<const FESpace>& space_ptr() const { return space_; }
  const IsaacsProblem& problem() const { return *problem_; }
  const MethodParams& params() const { return params_; }
  const ElementTables& element_tables() const { return et_; }
  int num_dofs() const { return space_->num_dofs(); }
  int points_per_element() const { return et_.rule.size(); }
  /// theta S_T + J_T.
  const SparseMatrix& linear_part() const { return linear_; }

  /// A_T(w; .) with controls chosen by the inf-sup. If alpha_field is given, a second evaluation
  /// with alpha frozen (sup over beta only) is returned in hjb.
  /// Coefficients may be given in extended precision; the residual is accumulated in it either way.
  Evaluation residual(const Eigen::VectorXd& w) const;
  Evaluation residual(const ExtendedVector& w) const;
  void residual_pair(const ExtendedVector& w, const FrozenControls& alpha_field, Evaluation& isaacs,
                     Evaluation& hjb) const;

  SparseSystem linearize(const FrozenControls& controls) const;

 private:
  struct ElementData {
    Tabulation trial;
    std::vector<Point2> points;
    Eigen::VectorXd weights;
  };
  void sweep(const ExtendedVector& w, const FrozenControls* alpha_field, Evaluation& isaacs, Evaluation* hjb) const;

  std::shared_ptr<const FESpace> space_;
  std::shared_ptr<const IsaacsProblem> problem_;
  MethodParams params_;
  ElementTables et_;
  std::vector<ElementData> elements_;
  std::vector<TestOperator> test_;
  SparseMatrix linear_;
};

}  // namespace isaacs
