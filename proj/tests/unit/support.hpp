// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "core/benchmarks.hpp"
#include "core/fespace.hpp"
#include "core/mesh.hpp"
#include "core/problem.hpp"

namespace isaacs::testing {

inline std::shared_ptr<const Mesh> square(int uniform_levels = 0) {
  Mesh m = unit_square_mesh();
  for (int i = 0; i < uniform_levels; ++i) m = m.refine_uniform();
  return std::make_shared<const Mesh>(std::move(m));
}

inline std::shared_ptr<const FESpace> space_on(std::shared_ptr<const Mesh> mesh, int s, int p) {
  return std::make_shared<const FESpace>(std::move(mesh), s, p);
}

inline FEFunction random_function(std::shared_ptr<const FESpace> space, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  FEFunction v(std::move(space));
  for (int i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] = d(rng);
  return v;
}

inline double bubble(const Point2& x) { return x.x() * (1 - x.x()) * x.y() * (1 - x.y()); }

/// Reference point uniformly distributed in the unit triangle.
inline Point2 random_reference_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  double a = d(rng), b = d(rng);
  if (a + b > 1.0) {
    a = 1.0 - a;
    b = 1.0 - b;
  }
  return Point2(a, b);
}

/// Single control with constant coefficients and constant forcing.
inline std::shared_ptr<const IsaacsProblem> constant_problem(const Mat2& a, double f) {
  Coefficients c;
  c.a = a;
  return std::make_shared<ConstantOperatorProblem>(ControlGrid{{0.0}, {0.0}}, 0.0, false,
                                                   std::vector<Coefficients>{c},
                                                   [f](const Point2&, std::span<double> out) { out[0] = f; });
}

}  // namespace isaacs::testing
