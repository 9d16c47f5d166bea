// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "core/forms.hpp"

namespace isaacs {

struct LinearSolveInfo {
  double relative_residual = 0.0;
  int refinement_steps = 0;
};

/// Sparse LU with partial pivoting plus a few steps of iterative refinement.
/// Throws Error(SingularMatrix) if the factorization fails.
Eigen::VectorXd linear_solve(const SparseSystem& system, LinearSolveInfo* info = nullptr);
/// Same, returning the refined iterate before rounding to double.
ExtendedVector linear_solve_extended(const SparseSystem& system, LinearSolveInfo* info = nullptr);

struct SolverConfig {
  double tol = 1e-10;  // on ||residual|| / ||rhs|| at the selected controls
  int max_outer = 50;
  int max_inner = 30;
};

struct TraceEntry {
  int outer = 0;
  int inner = 0;
  double residual = 0.0;      // Isaacs residual
  double hjb_residual = 0.0;  // residual of the current fixed-alpha problem
  int policy_changes = 0;     // quadrature points whose control pair changed
};

struct SolveTrace {
  std::vector<TraceEntry> entries;
  int linear_solves = 0;
  int outer_iterations = 0;
  bool converged = false;
  double final_residual() const { return entries.empty() ? 0.0 : entries.back().residual; }
  /// residual(last) / residual(previous); 0 when fewer than two entries.
  double last_ratio() const;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, SolveTrace trace)
      : Error(ErrorCode::NotConverged, what), trace_(std::move(trace)) {}
  const SolveTrace& trace() const { return trace_; }

 private:
  SolveTrace trace_;
};

struct SolveResult {
  Eigen::VectorXd solution;
  SolveTrace trace;
};

/// Policy iteration over beta with alpha frozen per quadrature point.
SolveResult solve_hjb_fixed_alpha(const Discretization& disc, const FrozenControls& alpha_field,
                                  const SolverConfig& config, const Eigen::VectorXd& initial);

/// Outer loop over alpha with inexact inner solves over beta.
SolveResult solve_isaacs(const Discretization& disc, const SolverConfig& config, const Eigen::VectorXd& initial);

}  // namespace isaacs
