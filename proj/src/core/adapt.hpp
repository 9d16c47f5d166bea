// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "core/estimate.hpp"
#include "core/solver.hpp"

namespace isaacs {

/// Smallest prefix of elements sorted by decreasing eta_sq (ties by index) carrying bulk * total.
/// Returned indices are sorted ascending. All-zero input gives an empty set.
std::vector<int> dorfler_mark(std::span<const double> eta_sq, double bulk);

struct AdaptiveRecord {
  int step = 0;
  int ndofs = 0;
  double error = 0.0;
  double eta = 0.0;
  double effectivity = 0.0;
  int newton_iters = 0;  // linear solves in this step
  double h_max = 0.0;
  int nelements = 0;
  int outer_iters = 0;
  double final_residual = 0.0;
  double last_ratio = 0.0;
  double local_efficiency = 0.0;  // max_K eta_K / ||u - u_T||_{T,K}, same quadrature on both sides
};

struct AdaptiveConfig {
  MethodParams method;
  SolverConfig solver;
  double bulk = 0.25;
  int max_dofs = 50000;
  int max_steps = 200;
  bool uniform = false;  // refine every element twice per step instead of marking
  int levels = 5;        // number of steps in uniform mode
  bool warm_start = true;
};

struct AdaptiveResult {
  std::vector<AdaptiveRecord> records;
  std::shared_ptr<const Mesh> mesh;  // mesh of the last completed step
  FEFunction solution;
  EstimatorReport report;
  SolveTrace last_trace;  // of the failing solve if failed
  bool failed = false;
  std::string failure;
};

using StepCallback = std::function<void(const AdaptiveRecord&, const AdaptiveResult&)>;

AdaptiveResult adaptive_loop(std::shared_ptr<const IsaacsProblem> problem, const ExactSolution* exact,
                             const Mesh& initial, const AdaptiveConfig& config, const StepCallback& on_step = {});

/// Least-squares slope of log(y) against log(x) over the last `tail` entries.
double loglog_slope(std::span<const double> x, std::span<const double> y, int tail);

}  // namespace isaacs
