// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isaacs {

std::vector<int> dorfler_mark(std::span<const double> eta_sq, double bulk) {
  require(bulk > 0.0 && bulk <= 1.0, "dorfler_mark: bulk must lie in (0, 1]");
  for (double e : eta_sq) require(e >= 0.0 && std::isfinite(e), "dorfler_mark: estimators must be finite and >= 0");
  std::vector<int> order(eta_sq.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return eta_sq[a] > eta_sq[b]; });
  double total = 0.0;
  for (int i : order) total += eta_sq[i];
  std::vector<int> marked;
  if (total <= 0.0) return marked;
  const double target = bulk * total;
  double acc = 0.0;
  for (int i : order) {
    if (acc >= target || eta_sq[i] <= 0.0) break;
    marked.push_back(i);
    acc += eta_sq[i];
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

double loglog_slope(std::span<const double> x, std::span<const double> y, int tail) {
  require(x.size() == y.size(), "loglog_slope: size mismatch");
  const int n = std::min<int>(tail, static_cast<int>(x.size()));
  require(n >= 2, "loglog_slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = x.size() - n; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AdaptiveResult adaptive_loop(std::shared_ptr<const IsaacsProblem> problem, const ExactSolution* exact,
                             const Mesh& initial, const AdaptiveConfig& config, const StepCallback& on_step) {
  const MethodParams method = config.method.resolved();
  require(config.bulk > 0.0 && config.bulk <= 1.0, "adaptive: bulk must lie in (0, 1]");
  require(config.max_dofs > 0 && config.max_steps > 0 && config.levels > 0, "adaptive: invalid stopping criteria");
  AdaptiveResult res;
  auto mesh = std::make_shared<const Mesh>(initial);
  FEFunction previous;
  const int steps = config.uniform ? config.levels : config.max_steps;
  for (int step = 0; step < steps; ++step) {
    auto space = std::make_shared<const FESpace>(mesh, method.s, method.p);
    const Discretization disc(space, problem, method);
    Eigen::VectorXd guess = Eigen::VectorXd::Zero(space->num_dofs());
    if (config.warm_start && previous.space) guess = prolongate(previous, space).coeffs;

    SolveResult sol;
    try {
      sol = solve_isaacs(disc, config.solver, guess);
    } catch (const SolverFailure& e) {
      res.failed = true;
      res.failure = e.what();
      res.last_trace = e.trace();
      return res;
    }
    FEFunction uh(space);
    uh.coeffs = sol.solution;

    AdaptiveRecord rec;
    rec.step = step;
    rec.ndofs = space->num_dofs();
    rec.nelements = mesh->num_elements();
    rec.newton_iters = sol.trace.linear_solves;
    rec.outer_iters = sol.trace.outer_iterations;
    rec.final_residual = sol.trace.final_residual();
    rec.last_ratio = sol.trace.last_ratio();
    const MeshSizes sizes = mesh_sizes(*mesh);
    rec.h_max = *std::max_element(sizes.h_element.begin(), sizes.h_element.end());

    res.report = estimate(uh, *problem, exact);
    rec.eta = res.report.eta;
    if (exact) {
      rec.error = res.report.error;
      rec.effectivity = res.report.effectivity;
      const int order = 2 * method.p + 2;
      const Eigen::VectorXd eta_same = estimate_eta(uh, *problem, order);
      for (int k = 0; k < mesh->num_elements(); ++k)
        if (res.report.error_K[k] > 0.0)
          rec.local_efficiency = std::max(rec.local_efficiency, eta_same[k] / res.report.error_K[k]);
    }
    res.records.push_back(rec);
    res.mesh = mesh;
    res.solution = uh;
    res.last_trace = sol.trace;
    if (on_step) on_step(rec, res);

    if (!config.uniform && rec.ndofs >= config.max_dofs) break;
    if (step + 1 == steps) break;
    if (config.uniform) {
      mesh = std::make_shared<const Mesh>(mesh->refine_uniform().refine_uniform());
      previous = FEFunction();  // two generations: parent map spans one refinement only
    } else {
      std::vector<double> eta_sq(res.report.eta_K.size());
      for (int k = 0; k < res.report.eta_K.size(); ++k) eta_sq[k] = res.report.eta_K[k] * res.report.eta_K[k];
      const std::vector<int> marked = dorfler_mark(eta_sq, config.bulk);
      if (marked.empty()) break;
      mesh = std::make_shared<const Mesh>(mesh->refine(marked));
      previous = uh;
    }
  }
  return res;
}

}  // namespace isaacs
