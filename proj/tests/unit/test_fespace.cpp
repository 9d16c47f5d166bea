// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "core/basis.hpp"
#include "core/fespace.hpp"
#include "core/quadrature.hpp"
#include "unit/support.hpp"

namespace isaacs {
namespace {

using testing::random_function;
using testing::random_reference_point;
using testing::space_on;
using testing::square;

std::vector<Point2> sample_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back(random_reference_point(rng));
  return pts;
}

TEST(ReferenceBasis, Cardinality) {
  for (int p = 2; p <= 6; ++p) EXPECT_EQ(ReferenceBasis(p).size(), (p + 1) * (p + 2) / 2);
}

TEST(ReferenceBasis, KroneckerAtNodes) {
  for (int p = 0; p <= 6; ++p) {
    const ReferenceBasis b(p);
    const Tabulation t = b.tabulate(b.nodes());
    EXPECT_LT((t.val - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff(), 1e-11) << "p=" << p;
  }
}

TEST(ReferenceBasis, PartitionOfUnity) {
  const auto pts = sample_points(100, 11);
  for (int p = 2; p <= 6; ++p) {
    const Tabulation t = ReferenceBasis(p).tabulate(pts);
    EXPECT_LT((t.val.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
    EXPECT_LT(t.dx.rowwise().sum().cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(t.dyy.rowwise().sum().cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(ReferenceBasis, DerivativesMatchDifferences) {
  const ReferenceBasis b(4);
  const double h = 1e-5;
  for (const Point2& x : sample_points(10, 5)) {
    const Tabulation t = b.tabulate({x});
    const Tabulation px = b.tabulate({x + Point2(h, 0)}), mx = b.tabulate({x - Point2(h, 0)});
    const Tabulation py = b.tabulate({x + Point2(0, h)}), my = b.tabulate({x - Point2(0, h)});
    EXPECT_LT(((px.val - mx.val) / (2 * h) - t.dx).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT(((py.val - my.val) / (2 * h) - t.dy).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT(((px.dx - mx.dx) / (2 * h) - t.dxx).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT(((py.dx - my.dx) / (2 * h) - t.dxy).cwiseAbs().maxCoeff(), 1e-5);
    EXPECT_LT(((py.dy - my.dy) / (2 * h) - t.dyy).cwiseAbs().maxCoeff(), 1e-5);
  }
}

TEST(FESpace, ContinuousSpaceIsSmaller) {
  const auto mesh = square(2);
  for (int p = 2; p <= 4; ++p) EXPECT_LT(FESpace(mesh, 1, p).num_dofs(), FESpace(mesh, 0, p).num_dofs());
  EXPECT_EQ(FESpace(mesh, 0, 3).num_dofs(), mesh->num_elements() * 10);
}

TEST(FESpace, ContinuousFunctionsHaveNoJumps) {
  std::mt19937 rng(2);
  const auto sp = space_on(square(2), 1, 3);
  const FEFunction v = random_function(sp, rng);
  const std::vector<double> params{0.0, 0.13, 0.5, 0.77, 1.0};
  for (int f = 0; f < sp->mesh().num_faces(); ++f) {
    const FaceJumpAvg j = face_jump_avg(v, f, params);
    EXPECT_LT(j.jump.cwiseAbs().maxCoeff(), 1e-13);
  }
  const Norms n = norms(v, 0.0);
  EXPECT_GT(n.jump, 0.0);  // gradient jumps remain
}

TEST(EvalFunction, PolynomialDerivatives) {
  const auto sp = space_on(square(1), 0, 2);
  const auto pts = sample_points(5, 9);
  const FEFunction lin = interpolate(sp, [](const Point2& x) { return x.x() + x.y(); });
  const FEFunction sq = interpolate(sp, [](const Point2& x) { return x.x() * x.x(); });
  const FEFunction xy = interpolate(sp, [](const Point2& x) { return x.x() * x.y(); });
  for (int k = 0; k < sp->mesh().num_elements(); ++k) {
    const PointValues a = eval_function(lin, k, pts), b = eval_function(sq, k, pts), c = eval_function(xy, k, pts);
    for (int q = 0; q < 5; ++q) {
      EXPECT_NEAR(a.dx[q], 1.0, 1e-12);
      EXPECT_NEAR(a.dy[q], 1.0, 1e-12);
      EXPECT_NEAR(std::abs(a.dxx[q]) + std::abs(a.dxy[q]) + std::abs(a.dyy[q]), 0.0, 1e-10);
      EXPECT_NEAR(b.dxx[q], 2.0, 1e-10);
      EXPECT_NEAR(b.dxy[q], 0.0, 1e-10);
      EXPECT_NEAR(b.dyy[q], 0.0, 1e-10);
      EXPECT_NEAR(c.dxx[q], 0.0, 1e-10);
      EXPECT_NEAR(c.dxy[q], 1.0, 1e-10);
      EXPECT_NEAR(c.dxx[q] + c.dyy[q], 0.0, 1e-10);
    }
  }
}

TEST(FaceJumpAvg, StepFunction) {
  const auto sp = space_on(square(), 0, 2);
  int diag = -1;
  for (int f = 0; f < sp->mesh().num_faces(); ++f)
    if (!sp->mesh().faces()[f].boundary()) diag = f;
  const Face& face = sp->mesh().faces()[diag];
  FEFunction v(sp);
  for (int dof : sp->element_dofs(face.elements[0])) v.coeffs[dof] = 1.0;
  const FaceJumpAvg j = face_jump_avg(v, diag, {0.2, 0.5, 0.9});
  for (int q = 0; q < 3; ++q) {
    EXPECT_NEAR(j.jump[q], 1.0, 1e-14);
    EXPECT_NEAR(j.avg[q], 0.5, 1e-14);
  }
}

TEST(FaceJumpAvg, BoundaryValue) {
  const auto sp = space_on(square(), 0, 2);
  const FEFunction v = interpolate(sp, [](const Point2&) { return 3.0; });
  for (int f = 0; f < sp->mesh().num_faces(); ++f) {
    if (!sp->mesh().faces()[f].boundary()) continue;
    const FaceJumpAvg j = face_jump_avg(v, f, {0.1, 0.6});
    for (int q = 0; q < 2; ++q) {
      EXPECT_NEAR(j.jump[q], 3.0, 1e-13);
      EXPECT_NEAR(j.avg[q], 3.0, 1e-13);
    }
  }
}

TEST(Norms, ConstantOnSquare) {
  const auto sp = space_on(square(), 0, 2);
  const FEFunction v = interpolate(sp, [](const Point2&) { return 1.0; });
  const Norms n = norms(v, 0.0);
  EXPECT_NEAR(n.jump * n.jump, 4.0, 1e-12);
  EXPECT_NEAR(n.norm_T, std::sqrt(5.0), 1e-12);
}

TEST(Norms, BubbleHasNoJumps) {
  for (int s = 0; s <= 1; ++s) {
    const auto sp = space_on(square(1), s, 4);
    const FEFunction v = interpolate(sp, testing::bubble);
    EXPECT_NEAR(norms(v, 0.0).jump, 0.0, 1e-12);
  }
}

TEST(Norms, LambdaSeminormBound) {
  std::mt19937 rng(4);
  const auto sp = space_on(square(1), 0, 2);
  for (double lambda : {0.0, 0.5, 1.0, 3.0}) {
    const double c2 = std::max({1.0, 2 * lambda, lambda * lambda});
    for (int i = 0; i < 20; ++i) {
      const Norms n = norms(random_function(sp, rng), lambda);
      EXPECT_LE(n.lambda_T * n.lambda_T + n.jump * n.jump, c2 * n.norm_T * n.norm_T * (1 + 1e-12));
    }
  }
}

TEST(Norms, PoincareFriedrichsRatioStable) {
  std::mt19937 rng(8);
  std::vector<double> worst;
  for (int level : {1, 3}) {
    const auto sp = space_on(square(level), 0, 2);
    double w = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Norms n = norms(random_function(sp, rng), 0.0);
      w = std::max(w, n.norm_T / std::hypot(n.hessian, n.jump));
    }
    worst.push_back(w);
  }
  EXPECT_TRUE(std::isfinite(worst[0]) && std::isfinite(worst[1]));
  EXPECT_LT(std::max(worst[0], worst[1]) / std::min(worst[0], worst[1]), 2.0);
}

TEST(Interpolate, ReproducesPolynomials) {
  const auto pts = sample_points(7, 1);
  auto max_error = [&](std::shared_ptr<const FESpace> sp, auto f) {
    const FEFunction v = interpolate(sp, f);
    double e = 0;
    for (int k = 0; k < sp->mesh().num_elements(); ++k) {
      const PointValues pv = eval_function(v, k, pts);
      for (std::size_t q = 0; q < pts.size(); ++q)
        e = std::max(e, std::abs(pv.val[q] - f(sp->mesh().map(k).to_physical(pts[q]))));
    }
    return e;
  };
  auto lin = [](const Point2& x) { return x.x() + x.y(); };
  auto cube = [](const Point2& x) { return x.x() * x.x() * x.x(); };
  EXPECT_LT(max_error(space_on(square(1), 0, 2), lin), 1e-14);
  EXPECT_LT(max_error(space_on(square(1), 0, 3), cube), 1e-14);
  const double e1 = max_error(space_on(square(2), 0, 2), cube);
  const double e2 = max_error(space_on(square(4), 0, 2), cube);
  EXPECT_GT(e1, 1e-6);
  EXPECT_NEAR(e1 / e2, 8.0, 2.0);
}

TEST(Prolongate, ExactOnRefinedMesh) {
  std::mt19937 rng(12);
  const auto coarse = square(1);
  for (int s = 0; s <= 1; ++s) {
    const auto sp = space_on(coarse, s, 3);
    const FEFunction v = random_function(sp, rng);
    const auto fine_mesh = std::make_shared<const Mesh>(coarse->refine(std::vector<int>{0, 3}));
    const FEFunction w = prolongate(v, space_on(fine_mesh, s, 3));
    const auto pts = sample_points(4, 21);
    for (int k = 0; k < fine_mesh->num_elements(); ++k) {
      const PointValues fv = eval_function(w, k, pts);
      const int parent = fine_mesh->parent(k);
      std::vector<Point2> ref;
      for (const Point2& xi : pts) ref.push_back(coarse->map(parent).to_reference(fine_mesh->map(k).to_physical(xi)));
      const PointValues cv = eval_function(v, parent, ref);
      EXPECT_LT((fv.val - cv.val).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

}  // namespace
}  // namespace isaacs
