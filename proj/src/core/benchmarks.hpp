// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/estimate.hpp"
#include "core/mesh.hpp"
#include "core/problem.hpp"

namespace isaacs {

struct Benchmark {
  std::string name;
  std::shared_ptr<const IsaacsProblem> problem;
  ExactSolution exact;
  Mesh initial_mesh;
};

struct PentagonOptions {
  double phi = 3.14159265358979323846 / 10.0;
  double alpha_max = 9.0 * 3.14159265358979323846 / 40.0;
  int n_alpha = 16;
  int n_beta = 32;
};

/// Vertices (0,0), (1,0), (1,1), (cos(pi-phi), 1), (cos(pi-phi), sin(pi-phi)).
std::vector<Point2> pentagon_vertices(double phi);
/// Fan from the vertex average to the five vertices, followed by two rounds of bisecting every element (28 elements).
Mesh pentagon_mesh(double phi);
/// u = -r^k sin(k t) exp(1/(4r^2-1)) for r < 1/2 (zero otherwise), k = pi / (pi - phi).
ExactSolution pentagon_solution(double phi);
Benchmark pentagon_benchmark(const PentagonOptions& options = {});

/// Diffusion a^{alpha beta} = R(beta) diag((cos a + sin a)/sqrt2, (cos a - sin a)/sqrt2) R(beta)^T.
Mat2 pentagon_diffusion(double alpha, double beta);

Mesh unit_square_mesh();
/// a = I, u = sin(pi x) sin(pi y).
Benchmark square_laplace_benchmark();
/// Two diagonal diffusions with forcing chosen so that the optimal control switches across x = 1/2.
Benchmark square_smooth_hjb_benchmark();

/// Names: "pentagon" (alias "pentagon-isaacs"), "square-laplace", "square-smooth-hjb".
Benchmark make_benchmark(const std::string& name, const PentagonOptions& options = {});

/// Largest relative mismatch between closed-form derivatives and central differences at the points.
double finite_difference_check(const ExactSolution& u, const std::vector<Point2>& points, double step = 1e-5);

}  // namespace isaacs
