// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "core/benchmarks.hpp"
#include "core/conformity.hpp"
#include "core/forms.hpp"
#include "core/quadrature.hpp"
#include "unit/support.hpp"

namespace isaacs {
namespace {

using testing::random_function;
using testing::space_on;
using testing::square;

int interior_face(const Mesh& mesh) {
  for (int f = 0; f < mesh.num_faces(); ++f)
    if (!mesh.faces()[f].boundary()) return f;
  return -1;
}

MethodParams plain(int s, int p) {
  MethodParams m;
  m.s = s;
  m.p = p;
  m.theta = 0.0;
  m.sigma = 0.0;
  m.rho = 0.0;
  return m;
}

TEST(LiftFace, UnitSquareDiagonal) {
  const auto sp = space_on(square(), 0, 2);
  const int f = interior_face(sp->mesh());
  const int n = quadrature(QuadratureDomain::Segment, 3).size();
  const Lifting r = lift_face(*sp, f, std::vector<double>(n, 1.0), 0, 3);
  ASSERT_EQ(r.side0.size(), 1);
  EXPECT_NEAR(r.side0[0], std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(r.side1[0], std::sqrt(2.0), 1e-13);
  const Lifting z = lift_face(*sp, f, std::vector<double>(n, 0.0), 0, 3);
  EXPECT_EQ(z.side0.norm() + z.side1.norm(), 0.0);
}

TEST(LiftFace, RejectsBoundaryFace) {
  const auto sp = space_on(square(), 0, 2);
  int bf = 0;
  while (!sp->mesh().faces()[bf].boundary()) ++bf;
  EXPECT_THROW(lift_face(*sp, bf, std::vector<double>(2, 1.0), 0, 3), Error);
}

TEST(LiftFace, DefiningIdentity) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> d(-1, 1);
  const auto mesh = square(1);
  const auto sp = space_on(mesh, 0, 4);
  const int q = 2, order = 5;
  const QuadratureRule seg = quadrature(QuadratureDomain::Segment, order);
  const QuadratureRule tri = quadrature(QuadratureDomain::Triangle, 2 * q);
  const ReferenceBasis qb(q);
  for (int trial = 0; trial < 20; ++trial) {
    int f = -1;
    std::uniform_int_distribution<int> pick(0, mesh->num_faces() - 1);
    while (f < 0 || mesh->faces()[f].boundary()) f = pick(rng);
    const Face& face = mesh->faces()[f];
    std::vector<double> g(seg.size());
    for (double& x : g) x = d(rng);
    const Lifting r = lift_face(*sp, f, g, q, order);
    Eigen::VectorXd phi[2];
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (int s = 0; s < 2; ++s) {
      phi[s] = Eigen::VectorXd::NullaryExpr(qb.size(), [&] { return d(rng); });
      const int k = face.elements[s];
      const Eigen::VectorXd& rs = s == 0 ? r.side0 : r.side1;
      for (int i = 0; i < tri.size(); ++i) {
        const Eigen::VectorXd b = qb.values(tri.point(i));
        const double w = tri.weights[i] * mesh->map(k).det;
        lhs += w * rs.dot(b) * phi[s].dot(b);
        scale += w * std::abs(rs.dot(b) * phi[s].dot(b));
      }
    }
    for (int i = 0; i < seg.size(); ++i) {
      const Point2 x = face_point(*mesh, f, seg.parameter(i));
      double avg = 0.0;
      for (int s = 0; s < 2; ++s) avg += 0.5 * phi[s].dot(qb.values(mesh->map(face.elements[s]).to_reference(x)));
      rhs += seg.weights[i] * face.length * g[i] * avg;
    }
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, scale));
  }
}

TEST(LiftedLaplacian, PiecewiseLaplacian) {
  const auto sp = space_on(square(2), 0, 2);
  const FEFunction v = interpolate(sp, [](const Point2& x) { return x.squaredNorm(); });
  const Eigen::MatrixXd lap = lifted_laplacian(v, plain(0, 2), 4);
  EXPECT_LT((lap.array() - 4.0).abs().maxCoeff(), 1e-11);
}

TEST(LiftedLaplacian, SmoothFunctionHasNoLifting) {
  const auto sp = space_on(square(1), 1, 4);
  const FEFunction v = interpolate(sp, testing::bubble);
  MethodParams m = plain(1, 4);
  const Eigen::MatrixXd a = lifted_laplacian(v, m, 8);
  m.chi = 1;
  const Eigen::MatrixXd b = lifted_laplacian(v, m, 8);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LiftedLaplacian, Kink) {
  const auto sp = space_on(square(), 0, 2);
  const Mesh& mesh = sp->mesh();
  const int f = interior_face(mesh);
  const Face& face = mesh.faces()[f];
  const Point2 x0 = mesh.vertices()[face.vertices[0]];
  FEFunction v(sp);
  const auto dofs = sp->element_dofs(face.elements[0]);
  for (int i = 0; i < sp->num_local(); ++i)
    v.coeffs[dofs[i]] = face.normal.dot(mesh.map(face.elements[0]).to_physical(sp->basis().nodes()[i]) - x0);
  MethodParams m = plain(0, 2);
  m.chi = 1;
  const Eigen::MatrixXd lap = lifted_laplacian(v, m, 4);
  EXPECT_LT((lap.array() + std::sqrt(2.0)).abs().maxCoeff(), 1e-12);
}

TEST(Forms, Symmetry) {
  std::mt19937 rng(37);
  const auto sp = space_on(square(1), 0, 3);
  for (int i = 0; i < 50; ++i) {
    const FEFunction w = random_function(sp, rng), v = random_function(sp, rng);
    const double s = S_T(w, v), b = B_star(w, v, 1.0), j = J_T(w, v, 3.0, 5.0);
    EXPECT_NEAR(s, S_T(v, w), 1e-12 * std::max(1.0, std::abs(s)));
    EXPECT_NEAR(b, B_star(v, w, 1.0), 1e-12 * std::max(1.0, std::abs(b)));
    EXPECT_NEAR(j, J_T(v, w, 3.0, 5.0), 1e-12 * std::max(1.0, std::abs(j)));
  }
}

TEST(Forms, StabilizationIdentity) {
  std::mt19937 rng(41);
  for (int s = 0; s <= 1; ++s) {
    const auto sp = space_on(square(1), s, 3);
    for (double lambda : {0.0, 1.0}) {
      for (int i = 0; i < 50; ++i) {
        const FEFunction w = random_function(sp, rng), v = random_function(sp, rng);
        const double st = S_T(w, v), bs = B_star(w, v, lambda), ll = LL_product(w, v, lambda);
        const double scale = std::max({std::abs(st), std::abs(bs), std::abs(ll), 1.0});
        EXPECT_LE(std::abs(st - bs + ll), 1e-10 * scale);
      }
    }
  }
}

TEST(Forms, BubbleValues) {
  for (int level = 0; level <= 1; ++level) {
    const auto sp = space_on(square(level), 1, 4);
    const FEFunction v = interpolate(sp, testing::bubble);
    EXPECT_NEAR(B_star(v, v, 0.0), 22.0 / 45.0, 1e-12);
    EXPECT_NEAR(LL_product(v, v, 0.0), 22.0 / 45.0, 1e-12);
  }
}

TEST(Forms, StabilizationVanishesOnBubble) {
  for (int s = 0; s <= 1; ++s) {
    for (int level = 0; level <= 2; ++level) {
      const auto sp = space_on(square(level), s, 4);
      const FEFunction v = interpolate(sp, testing::bubble);
      const SparseMatrix S = assemble_bilinear(*sp, stabilization_terms());
      const Eigen::VectorXd r = S * v.coeffs;
      const double scale = (S.cwiseAbs() * v.coeffs.cwiseAbs()).maxCoeff();
      EXPECT_LE(r.cwiseAbs().maxCoeff(), 1e-10 * scale) << "s=" << s << " level=" << level;
      const SparseMatrix J = assemble_bilinear(*sp, penalty_terms(10, 10));
      EXPECT_LE((J * v.coeffs).cwiseAbs().maxCoeff(), 1e-10 * (J.cwiseAbs() * v.coeffs.cwiseAbs()).maxCoeff());
    }
  }
}

TEST(Forms, PenaltyStepFunction) {
  const auto sp = space_on(square(), 0, 2);
  const Face& face = sp->mesh().faces()[interior_face(sp->mesh())];
  FEFunction v(sp);
  for (int d : sp->element_dofs(face.elements[1])) v.coeffs[d] = 1.0;
  EXPECT_NEAR(J_T(v, v, 7.0, 10.0), 25.0, 1e-12);
}

TEST(Forms, PenaltyOnContinuousSpace) {
  std::mt19937 rng(43);
  const auto sp = space_on(square(1), 1, 2);
  const FEFunction v = random_function(sp, rng);
  EXPECT_NEAR(J_T(v, v, 0.0, 1.0), 0.0, 1e-12);
  EXPECT_GT(J_T(v, v, 1.0, 0.0), 0.0);
}

TEST(Forms, PenaltySemidefinite) {
  std::mt19937 rng(47);
  const auto sp = space_on(square(1), 0, 3);
  for (int i = 0; i < 100; ++i) {
    const FEFunction v = random_function(sp, rng);
    EXPECT_GE(J_T(v, v, 1.0, 1.0), 0.0);
  }
}

TEST(Forms, StabilizationMatchesVectorForm) {
  std::mt19937 rng(53);
  const auto mesh = std::make_shared<const Mesh>(pentagon_mesh(std::numbers::pi / 10));
  for (int s = 0; s <= 1; ++s) {
    const auto sp = space_on(mesh, s, 3);
    for (int i = 0; i < 15; ++i) {
      const FEFunction w = random_function(sp, rng), v = random_function(sp, rng);
      const double a = S_T(w, v), b = C_T(gradient_field(w), gradient_field(v));
      EXPECT_LE(std::abs(a - b), 1e-11 * std::max(std::abs(a), 1.0));
    }
  }
}

// sup |S(w,v)| / (|w|_J |v|_J) as the spectral radius of S in the J-weighted range; J_T(1,1) stands in for |.|_J^2.
TEST(Forms, StabilizationBoundedByJumps) {
  std::vector<double> constants;
  for (int level = 1; level <= 3; ++level) {
    const auto sp = space_on(square(level), 0, 2);
    const Eigen::MatrixXd S = Eigen::MatrixXd(assemble_bilinear(*sp, stabilization_terms()));
    const Eigen::MatrixXd J = Eigen::MatrixXd(assemble_bilinear(*sp, penalty_terms(1.0, 1.0)));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ej(J);
    const double cut = 1e-10 * ej.eigenvalues().maxCoeff();
    int kernel = 0;
    while (ej.eigenvalues()[kernel] < cut) ++kernel;
    const int n = J.rows() - kernel;
    if (kernel > 0) {
      const Eigen::MatrixXd K = ej.eigenvectors().leftCols(kernel);
      EXPECT_LT((S * K).cwiseAbs().maxCoeff(), 1e-9 * S.cwiseAbs().maxCoeff());
    }
    const Eigen::MatrixXd P = ej.eigenvectors().rightCols(n) *
                              ej.eigenvalues().tail(n).cwiseSqrt().cwiseInverse().asDiagonal();
    const Eigen::MatrixXd M = P.transpose() * S * P;
    constants.push_back(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M).eigenvalues().cwiseAbs().maxCoeff());
  }
  const auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
  EXPECT_LT(*hi / *lo, 2.0);
}

VectorField affine_field(std::shared_ptr<const Mesh> mesh, const Mat2& A, const Vec2& b) {
  VectorField f(mesh, 1);
  const ReferenceBasis rb(1);
  for (int k = 0; k < mesh->num_elements(); ++k) {
    for (int i = 0; i < rb.size(); ++i) {
      const Vec2 v = A * mesh->map(k).to_physical(rb.nodes()[i]) + b;
      f.x(k, i) = v.x();
      f.y(k, i) = v.y();
    }
  }
  return f;
}

// Continuous global affine fields: interior face terms vanish, boundary terms reduce to midpoint values.
double affine_oracle(const Mesh& mesh, const Mat2& A, const Vec2& a, const Mat2& B, const Vec2& b) {
  double area = mesh.total_area();
  const double curl_a = A(1, 0) - A(0, 1), curl_b = B(1, 0) - B(0, 1);
  double c = area * ((A.array() * B.array()).sum() - A.trace() * B.trace() - curl_a * curl_b);
  for (const Face& f : mesh.faces()) {
    if (!f.boundary()) continue;
    const Point2 mid = 0.5 * (mesh.vertices()[f.vertices[0]] + mesh.vertices()[f.vertices[1]]);
    const Vec2 t = f.tangent(), n = f.normal;
    c -= f.length * ((A * t).dot(n) * (B * mid + b).dot(t) + (B * t).dot(n) * (A * mid + a).dot(t));
  }
  return c;
}

TEST(VectorForm, ConstantFieldsVanish) {
  for (const auto& mesh : {square(1), std::make_shared<const Mesh>(pentagon_mesh(std::numbers::pi / 10))}) {
    const VectorField e1 = affine_field(mesh, Mat2::Zero(), Vec2(1, 0));
    EXPECT_NEAR(C_T(e1, e1), 0.0, 1e-14);
    EXPECT_NEAR(affine_oracle(*mesh, Mat2::Zero(), Vec2(1, 0), Mat2::Zero(), Vec2(1, 0)), 0.0, 1e-14);
  }
}

TEST(VectorForm, AffineFieldsMatchOracle) {
  std::mt19937 rng(61);
  std::uniform_real_distribution<double> d(-1, 1);
  for (const auto& mesh : {square(1), std::make_shared<const Mesh>(pentagon_mesh(std::numbers::pi / 10))}) {
    for (int i = 0; i < 10; ++i) {
      const Mat2 A = Mat2::NullaryExpr([&] { return d(rng); }), B = Mat2::NullaryExpr([&] { return d(rng); });
      const Vec2 a(d(rng), d(rng)), b(d(rng), d(rng));
      const double expected = affine_oracle(*mesh, A, a, B, b);
      EXPECT_NEAR(C_T(affine_field(mesh, A, a), affine_field(mesh, B, b)), expected, 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST(VectorForm, EnrichedArgumentVanishes) {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> d(-1, 1);
  for (const auto& mesh : {square(2), std::make_shared<const Mesh>(pentagon_mesh(std::numbers::pi / 10))}) {
    for (int i = 0; i < 15; ++i) {
      VectorField w(mesh, 2), v(mesh, 2);
      for (VectorField* f : {&w, &v}) {
        f->x = Eigen::MatrixXd::NullaryExpr(f->x.rows(), f->x.cols(), [&] { return d(rng); });
        f->y = Eigen::MatrixXd::NullaryExpr(f->y.rows(), f->y.cols(), [&] { return d(rng); });
      }
      const VectorField ew = enrich_vector(w);
      const double scale = vector_norms(ew).norm * vector_norms(v).norm;
      EXPECT_LE(std::abs(C_T(ew, v)), 1e-10 * scale);
      EXPECT_LE(std::abs(C_T(v, ew)), 1e-10 * scale);
    }
  }
}

TEST(Operator, BubbleResidual) {
  const auto sp = space_on(square(), 1, 4);
  const Discretization disc(sp, testing::constant_problem(Mat2::Identity(), 1.0), plain(1, 4));
  const Evaluation ev = disc.residual(Eigen::VectorXd(Eigen::VectorXd::Zero(sp->num_dofs())));
  const FEFunction v = interpolate(sp, testing::bubble);
  EXPECT_NEAR(ev.residual.dot(v.coeffs), 2.0 / 3.0, 1e-13);
}

TEST(Operator, LinearInTestFunction) {
  std::mt19937 rng(71);
  const Benchmark b = pentagon_benchmark();
  const auto sp = space_on(std::make_shared<const Mesh>(b.initial_mesh), 0, 2);
  MethodParams m;
  const Discretization disc(sp, b.problem, m);
  const FEFunction w = random_function(sp, rng), v = random_function(sp, rng), z = random_function(sp, rng);
  const Eigen::VectorXd r = disc.residual(w.coeffs).residual;
  const double delta = 0.37;
  const double lhs = r.dot(v.coeffs + delta * z.coeffs), rhs = r.dot(v.coeffs) + delta * r.dot(z.coeffs);
  EXPECT_NEAR(lhs, rhs, 1e-12 * (r.cwiseAbs().dot(v.coeffs.cwiseAbs() + z.coeffs.cwiseAbs())));
}

TEST(Operator, SingleElementMatrixHasRankOne) {
  const auto mesh = std::make_shared<const Mesh>(Mesh::build({Point2(0, 0), Point2(2, 0), Point2(0.5, 1)}, {{0, 1, 2}}));
  const auto sp = space_on(mesh, 0, 2);
  const Discretization disc(sp, testing::constant_problem(Mat2::Identity(), 0.0), plain(0, 2));
  const Evaluation ev = disc.residual(Eigen::VectorXd(Eigen::VectorXd::Zero(sp->num_dofs())));
  const Eigen::MatrixXd A = Eigen::MatrixXd(disc.linearize(ev.controls).matrix);
  const ElementTables et(sp->basis(), 4);
  Tabulation tab;
  element_tabulation(*sp, et, 0, tab);
  const Eigen::VectorXd c = (tab.dxx + tab.dyy).row(0).transpose();
  const Eigen::MatrixXd expected = mesh->area(0) * c * c.transpose();
  EXPECT_LT((A - expected).cwiseAbs().maxCoeff(), 1e-12 * expected.cwiseAbs().maxCoeff());
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
  EXPECT_LT(sv[1], 1e-12 * sv[0]);
}

TEST(Operator, LinearizationConsistency) {
  std::mt19937 rng(73);
  const Benchmark b = pentagon_benchmark();
  for (int s = 0; s <= 1; ++s) {
    const auto sp = space_on(std::make_shared<const Mesh>(b.initial_mesh.refine_uniform()), s, 2);
    MethodParams m;
    m.s = s;
    const Discretization disc(sp, b.problem, m);
    const FEFunction w = random_function(sp, rng);
    const Evaluation ev = disc.residual(w.coeffs);
    const SparseSystem sys = disc.linearize(ev.controls);
    const Eigen::VectorXd lin = sys.matrix * w.coeffs - sys.rhs;
    const double scale = (sys.matrix.cwiseAbs() * w.coeffs.cwiseAbs() + sys.rhs.cwiseAbs()).maxCoeff();
    EXPECT_LT((lin - ev.residual).cwiseAbs().maxCoeff(), 1e-10 * scale);
    EXPECT_LT((ev.rhs - sys.rhs).cwiseAbs().maxCoeff(), 1e-12 * sys.rhs.cwiseAbs().maxCoeff());
  }
}

TEST(Operator, LinearizationCoercive) {
  std::mt19937 rng(79);
  const Benchmark b = pentagon_benchmark();
  const auto sp = space_on(std::make_shared<const Mesh>(b.initial_mesh), 0, 2);
  MethodParams m;
  m.sigma = m.rho = 100.0;
  const Discretization disc(sp, b.problem, m);
  const Evaluation ev = disc.residual(random_function(sp, rng).coeffs);
  const Eigen::MatrixXd A = Eigen::MatrixXd(disc.linearize(ev.controls).matrix);
  const Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  for (int i = 0; i < 100; ++i) {
    const Eigen::VectorXd x = random_function(sp, rng).coeffs;
    EXPECT_GT(x.dot(sym * x), 0.0);
  }
}

TEST(Operator, ConsistencyDefectVanishesOnBubble) {
  const auto sp = space_on(square(1), 1, 4);
  MethodParams m;
  m.s = 1;
  m.p = 4;
  const Discretization disc(sp, testing::constant_problem(Mat2::Identity(), 1.0), m);
  const FEFunction v = interpolate(sp, testing::bubble);
  const Eigen::VectorXd r = disc.linear_part() * v.coeffs;
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10 * (disc.linear_part().cwiseAbs() * v.coeffs.cwiseAbs()).maxCoeff());
}

TEST(Monotonicity, ThetaWindowAndMu) {
  const double nu = std::cos(9 * std::numbers::pi / 20);
  const ThetaWindow w = theta_window(nu);
  EXPECT_NEAR(w.lower, 0.30224, 1e-5);
  EXPECT_NEAR(w.upper, 0.69776, 1e-5);
  EXPECT_NEAR(monotonicity_mu(0.5, nu), nu / 2, 1e-15);
  EXPECT_NEAR(monotonicity_mu(0.5, nu), 0.07822, 1e-5);
  EXPECT_NEAR(monotonicity_mu(w.lower, nu), 0.0, 1e-14);
  EXPECT_NEAR(monotonicity_mu(w.upper, nu), 0.0, 1e-14);
}

TEST(Method, ParameterValidation) {
  MethodParams m;
  const MethodParams r = m.resolved();
  EXPECT_EQ(r.q, 0);
  EXPECT_DOUBLE_EQ(r.sigma, 40.0);
  EXPECT_DOUBLE_EQ(r.rho, 160.0);
  m.q = -1;
  m.p = 3;
  EXPECT_EQ(m.resolved().q, 1);
  MethodParams bad;
  bad.theta = 1.5;
  EXPECT_THROW(bad.resolved(), Error);
  bad = MethodParams{};
  bad.chi = 2;
  EXPECT_THROW(bad.resolved(), Error);
  bad = MethodParams{};
  bad.p = 3;
  bad.q = 0;
  EXPECT_THROW(bad.resolved(), Error);
}

}  // namespace
}  // namespace isaacs
