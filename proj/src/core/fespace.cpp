// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/fespace.hpp"

#include <cmath>
#include <map>
#include <string>

namespace isaacs {

FESpace::FESpace(std::shared_ptr<const Mesh> mesh, int s, int p)
    : mesh_(std::move(mesh)), s_(s), p_(p), basis_(p) {
  require(mesh_ != nullptr, "FESpace: null mesh");
  require(s == 0 || s == 1, "FESpace: continuity index must be 0 or 1");
  require(p >= 2 && p <= 6, "FESpace: polynomial degree must be in [2, 6]");
  const Mesh& m = *mesh_;
  const int nl = num_local();
  dofs_.assign(static_cast<std::size_t>(m.num_elements()) * nl, -1);

  if (s == 0) {
    for (std::size_t i = 0; i < dofs_.size(); ++i) dofs_[i] = static_cast<int>(i);
    num_dofs_ = static_cast<int>(dofs_.size());
    return;
  }

  std::vector<char> boundary_vertex(m.num_vertices(), 0);
  for (const auto& f : m.faces())
    if (f.boundary()) boundary_vertex[f.vertices[0]] = boundary_vertex[f.vertices[1]] = 1;

  std::vector<int> vertex_dof(m.num_vertices(), -2);
  std::map<std::pair<int, int>, int> edge_dof;  // (face, position from lower vertex)
  int next = 0;
  for (int k = 0; k < m.num_elements(); ++k) {
    const auto& tri = m.elements()[k];
    for (int i = 0; i < nl; ++i) {
      const NodeLocation& loc = basis_.location(i);
      int& d = dofs_[static_cast<std::size_t>(k) * nl + i];
      if (loc.kind == NodeLocation::Vertex) {
        const int v = tri[loc.entity];
        if (boundary_vertex[v]) continue;
        if (vertex_dof[v] < 0) vertex_dof[v] = next++;
        d = vertex_dof[v];
      } else if (loc.kind == NodeLocation::Edge) {
        const int f = m.element_face(k, loc.entity);
        if (m.faces()[f].boundary()) continue;
        const int start = tri[(loc.entity + 1) % 3];
        const int pos = start == m.faces()[f].vertices[0] ? loc.position : p - loc.position;
        auto [it, inserted] = edge_dof.try_emplace({f, pos}, next);
        if (inserted) ++next;
        d = it->second;
      } else {
        d = next++;
      }
    }
  }
  num_dofs_ = next;
}

Eigen::VectorXd FEFunction::local(int k) const {
  const auto dofs = space->element_dofs(k);
  Eigen::VectorXd c(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) c[i] = dofs[i] >= 0 ? coeffs[dofs[i]] : 0.0;
  return c;
}

ElementTables::ElementTables(const ReferenceBasis& basis, int order)
    : rule(quadrature(QuadratureDomain::Triangle, order)) {
  std::vector<Point2> pts(rule.size());
  for (int q = 0; q < rule.size(); ++q) pts[q] = rule.point(q);
  ref = basis.tabulate(pts);
}

namespace {

// Reference coordinates of the vertices of the reference triangle.
const Point2 kRefVertex[3] = {Point2(0, 0), Point2(1, 0), Point2(0, 1)};

std::vector<Point2> edge_points(const QuadratureRule& rule, int e, bool reversed) {
  const Point2 a = kRefVertex[(e + 1) % 3], b = kRefVertex[(e + 2) % 3];
  std::vector<Point2> pts(rule.size());
  for (int q = 0; q < rule.size(); ++q) {
    const double t = reversed ? 1.0 - rule.parameter(q) : rule.parameter(q);
    pts[q] = a + t * (b - a);
  }
  return pts;
}

bool side_reversed(const Mesh& mesh, int f, int side) {
  const Face& face = mesh.faces()[f];
  const int k = face.elements[side];
  const int e = face.local_edge[side];
  return mesh.elements()[k][(e + 1) % 3] != face.vertices[0];
}

}  // namespace

FaceTables::FaceTables(const ReferenceBasis& basis, int order) : rule(quadrature(QuadratureDomain::Segment, order)) {
  for (int e = 0; e < 3; ++e)
    for (int r = 0; r < 2; ++r) ref[e][r] = basis.tabulate(edge_points(rule, e, r == 1));
}

void element_tabulation(const FESpace& space, const ElementTables& tables, int k, Tabulation& out) {
  to_physical(tables.ref, space.mesh().map(k).inverse, out);
}

void face_tabulation(const FESpace& space, const FaceTables& tables, int f, int side, Tabulation& out) {
  const Mesh& mesh = space.mesh();
  const Face& face = mesh.faces()[f];
  const int k = face.elements[side];
  to_physical(tables.ref[face.local_edge[side]][side_reversed(mesh, f, side) ? 1 : 0], mesh.map(k).inverse, out);
}

Point2 face_point(const Mesh& mesh, int f, double t) {
  const Face& face = mesh.faces()[f];
  const Point2& a = mesh.vertices()[face.vertices[0]];
  const Point2& b = mesh.vertices()[face.vertices[1]];
  return a + t * (b - a);
}

PointValues eval_function(const FEFunction& v, int k, const std::vector<Point2>& ref_points) {
  Tabulation ref = v.space->basis().tabulate(ref_points), phys;
  to_physical(ref, v.space->mesh().map(k).inverse, phys);
  const Eigen::VectorXd c = v.local(k);
  return {phys.val * c, phys.dx * c, phys.dy * c, phys.dxx * c, phys.dxy * c, phys.dyy * c};
}

FaceJumpAvg face_jump_avg(const FEFunction& v, int f, const std::vector<double>& params) {
  const FESpace& space = *v.space;
  const Mesh& mesh = space.mesh();
  const Face& face = mesh.faces()[f];
  const int np = static_cast<int>(params.size());
  FaceJumpAvg out;
  out.jump = Eigen::VectorXd::Zero(np);
  out.avg = Eigen::VectorXd::Zero(np);
  out.jump_grad = Eigen::MatrixXd::Zero(np, 2);
  out.avg_grad = Eigen::MatrixXd::Zero(np, 2);
  const int sides = face.boundary() ? 1 : 2;
  for (int s = 0; s < sides; ++s) {
    const int k = face.elements[s];
    std::vector<Point2> ref(np);
    for (int q = 0; q < np; ++q) ref[q] = mesh.map(k).to_reference(face_point(mesh, f, params[q]));
    const PointValues pv = eval_function(v, k, ref);
    const double sign = s == 0 ? 1.0 : -1.0;
    const double weight = face.boundary() ? 1.0 : 0.5;
    out.jump += sign * pv.val;
    out.avg += weight * pv.val;
    out.jump_grad.col(0) += sign * pv.dx;
    out.jump_grad.col(1) += sign * pv.dy;
    out.avg_grad.col(0) += weight * pv.dx;
    out.avg_grad.col(1) += weight * pv.dy;
  }
  return out;
}

Norms norms(const FEFunction& v, double lambda) {
  require(lambda >= 0.0, "norms: lambda must be nonnegative");
  const FESpace& space = *v.space;
  const Mesh& mesh = space.mesh();
  const int p = space.degree();
  const ElementTables et(space.basis(), 2 * p);
  const FaceTables ft(space.basis(), 2 * p);
  double h2 = 0, g2 = 0, v2 = 0, lap2 = 0, j2 = 0;
  Tabulation tab;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    element_tabulation(space, et, k, tab);
    const Eigen::VectorXd c = v.local(k);
    const Eigen::VectorXd val = tab.val * c, dx = tab.dx * c, dy = tab.dy * c;
    const Eigen::VectorXd hxx = tab.dxx * c, hxy = tab.dxy * c, hyy = tab.dyy * c;
    const double det = mesh.map(k).det;
    for (int q = 0; q < et.rule.size(); ++q) {
      const double w = et.rule.weights[q] * det;
      h2 += w * (hxx[q] * hxx[q] + 2 * hxy[q] * hxy[q] + hyy[q] * hyy[q]);
      g2 += w * (dx[q] * dx[q] + dy[q] * dy[q]);
      v2 += w * val[q] * val[q];
      lap2 += w * (hxx[q] + hyy[q]) * (hxx[q] + hyy[q]);
    }
  }
  std::vector<double> params(ft.rule.size());
  for (int q = 0; q < ft.rule.size(); ++q) params[q] = ft.rule.parameter(q);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& face = mesh.faces()[f];
    const FaceJumpAvg ja = face_jump_avg(v, f, params);
    const double h = face.length;
    for (int q = 0; q < ft.rule.size(); ++q) {
      const double w = ft.rule.weights[q] * h;
      if (!face.boundary()) j2 += w / h * ja.jump_grad.row(q).squaredNorm();
      j2 += w / (h * h * h) * ja.jump[q] * ja.jump[q];
    }
  }
  Norms n;
  n.norm_T = std::sqrt(h2 + g2 + v2 + j2);
  n.jump = std::sqrt(j2);
  n.lambda_T = std::sqrt(h2 + 2 * lambda * g2 + lambda * lambda * v2);
  n.hessian = std::sqrt(h2);
  n.laplacian = std::sqrt(lap2);
  return n;
}

FEFunction interpolate(std::shared_ptr<const FESpace> space, const ScalarField& f) {
  FEFunction out(space);
  const Mesh& mesh = space->mesh();
  const auto& nodes = space->basis().nodes();
  std::vector<char> done(space->num_dofs(), 0);
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const auto dofs = space->element_dofs(k);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      const int d = dofs[i];
      if (d < 0 || done[d]) continue;
      out.coeffs[d] = f(mesh.map(k).to_physical(nodes[i]));
      done[d] = 1;
    }
  }
  return out;
}

FEFunction prolongate(const FEFunction& v, std::shared_ptr<const FESpace> fine) {
  const Mesh& fm = fine->mesh();
  const Mesh& cm = v.space->mesh();
  require(fm.has_parents() || fm.num_elements() == cm.num_elements(), "prolongate: mesh has no parent map");
  require(fine->degree() == v.space->degree(), "prolongate: degree mismatch");
  FEFunction out(fine);
  const auto& nodes = fine->basis().nodes();
  const ReferenceBasis& basis = v.space->basis();
  std::vector<char> done(fine->num_dofs(), 0);
  for (int k = 0; k < fm.num_elements(); ++k) {
    const int parent = fm.has_parents() ? fm.parent(k) : k;
    require(parent >= 0 && parent < cm.num_elements(), "prolongate: parent index out of range");
    const Eigen::VectorXd c = v.local(parent);
    const auto dofs = fine->element_dofs(k);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      const int d = dofs[i];
      if (d < 0 || done[d]) continue;
      const Point2 xi = cm.map(parent).to_reference(fm.map(k).to_physical(nodes[i]));
      out.coeffs[d] = basis.values(xi).dot(c);
      done[d] = 1;
    }
  }
  return out;
}

}  // namespace isaacs
