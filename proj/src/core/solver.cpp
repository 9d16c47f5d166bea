// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseLU>

namespace isaacs {

ExtendedVector linear_solve_extended(const SparseSystem& system, LinearSolveInfo* info) {
  const auto& a = system.matrix;
  require(a.rows() == a.cols() && a.rows() == system.rhs.size(), "linear_solve: dimension mismatch");
  // Symmetric diagonal scaling; graded meshes otherwise spread the diagonal over many decades.
  Eigen::VectorXd d(a.rows());
  for (int i = 0; i < a.outerSize(); ++i) {
    double diag = 0.0, row_max = 0.0;
    for (SparseMatrix::InnerIterator it(a, i); it; ++it) {
      if (it.col() == i) diag = std::abs(it.value());
      row_max = std::max(row_max, std::abs(it.value()));
    }
    const double ref = diag > 0.0 ? diag : row_max;
    if (!(ref > 0.0)) throw Error(ErrorCode::SingularMatrix, "linear_solve: zero row " + std::to_string(i));
    d[i] = 1.0 / std::sqrt(ref);
  }
  Eigen::SparseMatrix<double> col = d.asDiagonal() * a * d.asDiagonal();
  col.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(col);
  lu.factorize(col);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SingularMatrix, "linear_solve: factorization failed: " + lu.lastErrorMessage());
  auto scaled_solve = [&](const Eigen::VectorXd& b) -> Eigen::VectorXd {
    return d.cwiseProduct(lu.solve(d.cwiseProduct(b)).eval());
  };

  // Refinement with the iterate and the residual in extended precision.
  ExtendedVector x = scaled_solve(system.rhs).cast<long double>();
  const double bnorm = std::max(system.rhs.norm(), 1e-300);
  Eigen::VectorXd r = (-multiply_extended(a, x, &system.rhs)).cast<double>();
  double rel = r.norm() / bnorm;
  int steps = 0;
  while (rel > 1e-15 && steps < 4) {
    const ExtendedVector candidate = x + scaled_solve(r).cast<long double>();
    const Eigen::VectorXd rc = (-multiply_extended(a, candidate, &system.rhs)).cast<double>();
    const double rel_c = rc.norm() / bnorm;
    ++steps;
    if (!(rel_c < rel)) break;
    x = candidate;
    r = rc;
    rel = rel_c;
  }
  if (!x.allFinite()) throw Error(ErrorCode::SingularMatrix, "linear_solve: non-finite solution");
  if (info) *info = {rel, steps};
  return x;
}

Eigen::VectorXd linear_solve(const SparseSystem& system, LinearSolveInfo* info) {
  return linear_solve_extended(system, info).cast<double>();
}

double SolveTrace::last_ratio() const {
  if (entries.size() < 2) return 0.0;
  const double prev = entries[entries.size() - 2].residual;
  return prev > 0.0 ? entries.back().residual / prev : 0.0;
}

namespace {

int count_changes(const FrozenControls& a, const FrozenControls& b) {
  int n = 0;
  for (std::size_t i = 0; i < a.alpha.size(); ++i) n += a.alpha[i] != b.alpha[i] || a.beta[i] != b.beta[i];
  return n;
}

// Correction form: the update only depends on the residual, so the assembled
// matrix needs to be consistent with it only to first order.
void newton_step(const Discretization& disc, const FrozenControls& controls, const Eigen::VectorXd& residual,
                 ExtendedVector& w) {
  SparseSystem sys = disc.linearize(controls);
  sys.rhs = -residual;
  w += linear_solve_extended(sys);
}

}  // namespace

SolveResult solve_hjb_fixed_alpha(const Discretization& disc, const FrozenControls& alpha_field,
                                  const SolverConfig& config, const Eigen::VectorXd& initial) {
  require(config.tol > 0.0 && config.max_inner > 0, "solver: invalid configuration");
  SolveResult out;
  ExtendedVector w = initial.cast<long double>();
  Evaluation isaacs, hjb;
  disc.residual_pair(w, alpha_field, isaacs, hjb);
  out.trace.entries.push_back({0, 0, isaacs.scaled_norm(), hjb.scaled_norm(), 0});
  for (int it = 1; it <= config.max_inner; ++it) {
    if (hjb.scaled_norm() <= config.tol) break;
    const FrozenControls prev = hjb.controls;
    newton_step(disc, hjb.controls, hjb.residual, w);
    ++out.trace.linear_solves;
    disc.residual_pair(w, alpha_field, isaacs, hjb);
    out.trace.entries.push_back({0, it, isaacs.scaled_norm(), hjb.scaled_norm(), count_changes(prev, hjb.controls)});
  }
  out.solution = w.cast<double>();
  if (hjb.scaled_norm() <= config.tol) {
    out.trace.converged = true;
    return out;
  }
  throw SolverFailure("fixed-alpha solve did not converge in " + std::to_string(config.max_inner) + " iterations",
                      out.trace);
}

SolveResult solve_isaacs(const Discretization& disc, const SolverConfig& config, const Eigen::VectorXd& initial) {
  require(config.tol > 0.0 && config.max_outer > 0 && config.max_inner > 0, "solver: invalid configuration");
  require(initial.size() == disc.num_dofs(), "solver: initial guess has the wrong length");
  SolveResult out;
  ExtendedVector w = initial.cast<long double>();
  Evaluation ev = disc.residual(w), hjb;
  out.trace.entries.push_back({0, 0, ev.scaled_norm(), ev.scaled_norm(), 0});
  for (int outer = 1; outer <= config.max_outer; ++outer) {
    if (ev.scaled_norm() <= config.tol) {
      out.solution = w.cast<double>();
      out.trace.converged = true;
      return out;
    }
    out.trace.outer_iterations = outer;
    const FrozenControls alpha_field = ev.controls;
    const double inner_tol = std::max(config.tol, 0.1 * ev.scaled_norm());
    // With alpha frozen at the current minimizers, the fixed-alpha maximizers coincide with the Isaacs ones.
    FrozenControls active = ev.controls;
    Eigen::VectorXd active_residual = ev.residual;
    for (int inner = 1; inner <= config.max_inner; ++inner) {
      const FrozenControls prev = ev.controls;
      newton_step(disc, active, active_residual, w);
      ++out.trace.linear_solves;
      disc.residual_pair(w, alpha_field, ev, hjb);
      out.trace.entries.push_back(
          {outer, inner, ev.scaled_norm(), hjb.scaled_norm(), count_changes(prev, ev.controls)});
      if (ev.scaled_norm() <= config.tol) {
        out.solution = w.cast<double>();
        out.trace.converged = true;
        return out;
      }
      if (hjb.scaled_norm() <= inner_tol) break;
      active = hjb.controls;
      active_residual = hjb.residual;
    }
  }
  out.solution = w.cast<double>();
  throw SolverFailure("Isaacs solve did not converge in " + std::to_string(config.max_outer) + " outer iterations",
                      out.trace);
}

}  // namespace isaacs
