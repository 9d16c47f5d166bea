// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/benchmarks.hpp"
#include "core/mesh.hpp"
#include "unit/support.hpp"

namespace isaacs {
namespace {

ErrorCode build_error(std::vector<Point2> v, std::vector<Mesh::Triangle> t) {
  try {
    Mesh::build(std::move(v), std::move(t));
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

bool inside(const Mesh& mesh, int k, const Point2& x) {
  const Point2 xi = mesh.map(k).to_reference(x);
  return xi.x() >= -1e-12 && xi.y() >= -1e-12 && xi.x() + xi.y() <= 1 + 1e-12;
}

TEST(Mesh, UnitSquareCounts) {
  const Mesh m = unit_square_mesh();
  EXPECT_EQ(m.num_faces(), 5);
  EXPECT_EQ(m.num_interior_faces(), 1);
  EXPECT_EQ(m.num_boundary_faces(), 4);
}

TEST(Mesh, SingleTriangle) {
  const Mesh m = Mesh::build({Point2(0, 0), Point2(1, 0), Point2(0, 1)}, {{0, 1, 2}});
  EXPECT_EQ(m.num_faces(), 3);
  EXPECT_EQ(m.num_interior_faces(), 0);
}

TEST(Mesh, RejectsHalfSharedEdge) {
  // (1,0) lies in the middle of the edge (0,0)-(2,0) of the first triangle.
  EXPECT_EQ(build_error({Point2(0, 0), Point2(2, 0), Point2(0, 2), Point2(1, 0), Point2(0.5, -1)},
                        {{0, 1, 2}, {0, 4, 3}}),
            ErrorCode::NonConforming);
}

TEST(Mesh, RejectsZeroArea) {
  EXPECT_EQ(build_error({Point2(0, 0), Point2(1, 0), Point2(2, 0)}, {{0, 1, 2}}), ErrorCode::DegenerateElement);
}

TEST(Mesh, RejectsEdgeWithThreeElements) {
  EXPECT_EQ(build_error({Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(0, -1), Point2(1, 1)},
                        {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}),
            ErrorCode::NonConforming);
}

TEST(Mesh, ReorientsClockwise) {
  const Mesh m = Mesh::build({Point2(0, 0), Point2(0, 1), Point2(1, 0)}, {{0, 1, 2}});
  EXPECT_GT(m.area(0), 0.0);
  EXPECT_NEAR(m.area(0), 0.5, 1e-15);
}

TEST(Mesh, NormalsAndOrientation) {
  const Mesh m = pentagon_mesh(std::numbers::pi / 10);
  for (int f = 0; f < m.num_faces(); ++f) {
    const Face& face = m.faces()[f];
    EXPECT_NEAR(face.normal.norm(), 1.0, 1e-14);
    const Point2 mid = 0.5 * (m.vertices()[face.vertices[0]] + m.vertices()[face.vertices[1]]);
    EXPECT_GT(face.normal.dot(mid - m.centroid(face.elements[0])), 0.0);
    if (!face.boundary()) EXPECT_LT(face.elements[0], face.elements[1]);
    EXPECT_NEAR(face.normal.dot(m.vertices()[face.vertices[1]] - m.vertices()[face.vertices[0]]), 0.0, 1e-14);
  }
}

TEST(MeshSizes, RightTriangle) {
  const Mesh m = Mesh::build({Point2(0, 0), Point2(1, 0), Point2(0, 1)}, {{0, 1, 2}});
  const MeshSizes s = mesh_sizes(m);
  EXPECT_NEAR(s.h_element[0], 0.70711, 1e-5);
  EXPECT_NEAR(s.shape_regularity, std::sqrt(2.0) / (2.0 - std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(s.shape_regularity, 2.41421, 1e-5);
}

TEST(MeshSizes, FaceLength) {
  const Mesh m = Mesh::build({Point2(0, 0), Point2(3, 4), Point2(0, 4)}, {{0, 1, 2}});
  const MeshSizes s = mesh_sizes(m);
  EXPECT_NEAR(*std::max_element(s.h_face.begin(), s.h_face.end()), 5.0, 1e-14);
}

TEST(MeshSizes, Equilateral) {
  const Mesh m = Mesh::build({Point2(0, 0), Point2(1, 0), Point2(0.5, std::sqrt(3.0) / 2)}, {{0, 1, 2}});
  EXPECT_NEAR(mesh_sizes(m).shape_regularity, std::sqrt(3.0), 1e-12);
}

TEST(Refine, EmptyMarkingIsIdentity) {
  const Mesh m = pentagon_mesh(std::numbers::pi / 10);
  const Mesh r = m.refine({});
  EXPECT_EQ(r.vertices(), m.vertices());
  EXPECT_EQ(r.elements(), m.elements());
}

TEST(Refine, ClosureAcrossDiagonal) {
  const Mesh m = unit_square_mesh();
  const Face& diag = m.faces()[m.element_face(0, m.refinement_edge(0))];
  ASSERT_FALSE(diag.boundary());
  const std::vector<int> marked{0};
  const Mesh r = m.refine(marked);
  EXPECT_EQ(r.num_elements(), 4);
  EXPECT_TRUE(r.audit_conformity());
}

TEST(Refine, MarkAllDoubles) {
  Mesh m = unit_square_mesh();
  for (int level = 0; level < 6; ++level) {
    std::vector<int> all(m.num_elements());
    for (int k = 0; k < m.num_elements(); ++k) all[k] = k;
    const Mesh r = m.refine(all);
    EXPECT_EQ(r.num_elements(), 2 * m.num_elements());
    m = r;
  }
}

TEST(Refine, RandomSequencesStayConforming) {
  std::mt19937 rng(7);
  Mesh m = pentagon_mesh(std::numbers::pi / 10);
  const double area = m.total_area();
  for (int step = 0; step < 25; ++step) {
    std::vector<int> marked;
    std::bernoulli_distribution pick(0.15);
    for (int k = 0; k < m.num_elements(); ++k)
      if (pick(rng)) marked.push_back(k);
    const Mesh r = m.refine(marked);
    std::string why;
    ASSERT_TRUE(r.audit_conformity(&why)) << why;
    EXPECT_NEAR(r.total_area(), area, 1e-12 * area);
    // every marked element was bisected: none of its children equals it
    std::vector<int> children(m.num_elements(), 0);
    for (int k = 0; k < r.num_elements(); ++k) {
      ASSERT_GE(r.parent(k), 0);
      ++children[r.parent(k)];
      EXPECT_TRUE(inside(m, r.parent(k), r.centroid(k)));
    }
    for (int k : marked) EXPECT_GE(children[k], 2);
    m = r;
  }
}

TEST(Refine, ShapeRegularityBounded) {
  Mesh m = pentagon_mesh(std::numbers::pi / 10);
  const double initial = mesh_sizes(m).shape_regularity;
  for (int i = 0; i < 10; ++i) {
    m = m.refine_uniform();
    EXPECT_LE(mesh_sizes(m).shape_regularity, 2.0 * initial);
  }
}

TEST(MeshIo, BitExactRoundTrip) {
  std::mt19937 rng(3);
  Mesh m = pentagon_mesh(std::numbers::pi / 10);
  m = m.refine(std::vector<int>{0, 5, 7});
  std::stringstream a;
  write_mesh(m, a);
  const Mesh back = read_mesh(a);
  EXPECT_EQ(back.vertices(), m.vertices());
  EXPECT_EQ(back.elements(), m.elements());
  std::stringstream b;
  write_mesh(back, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(MeshIo, MalformedInput) {
  std::stringstream in("3 1\n0 0\n1 0\n");
  try {
    read_mesh(in);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
}  // namespace isaacs
