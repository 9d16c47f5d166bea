// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

#include "core/fespace.hpp"
#include "core/problem.hpp"

namespace isaacs {

/// Exact solution with first and second derivatives.
struct ExactSolution {
  std::function<void(const Point2& x, double& u, Vec2& grad, Mat2& hess)> eval;
};

struct EstimatorReport {
  Eigen::VectorXd eta_K;    // per element
  Eigen::VectorXd error_K;  // per element, empty without an exact solution
  double eta = 0.0;
  double error = 0.0;
  double effectivity = 0.0;
};

/// Per-element estimators; volume residual integrated with a rule of the given order (default 2p).
Eigen::VectorXd estimate_eta(const FEFunction& v, const IsaacsProblem& problem, int order = -1);

/// Per-element localized error norm ||u - v||_{T,K}; element terms of the given order (default 2p + 2).
Eigen::VectorXd error_norm(const ExactSolution& u, const FEFunction& v, int order = -1);

EstimatorReport estimate(const FEFunction& v, const IsaacsProblem& problem, const ExactSolution* u);

/// delta_F-weighted jump terms of the estimator (identical in the localized error norm), per element, squared.
Eigen::VectorXd face_jump_terms(const FEFunction& v);

}  // namespace isaacs
