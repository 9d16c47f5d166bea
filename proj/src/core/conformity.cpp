// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/conformity.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

namespace isaacs {

VectorField::VectorField(std::shared_ptr<const Mesh> m, int r) : mesh(std::move(m)), degree(r) {
  const int n = ReferenceBasis(r).size();
  x = Eigen::MatrixXd::Zero(mesh->num_elements(), n);
  y = Eigen::MatrixXd::Zero(mesh->num_elements(), n);
}

VectorField gradient_field(const FEFunction& v) {
  const FESpace& space = *v.space;
  VectorField out(space.mesh_ptr(), space.degree() - 1);
  const ReferenceBasis rb(out.degree);
  for (int k = 0; k < space.mesh().num_elements(); ++k) {
    const PointValues pv = eval_function(v, k, rb.nodes());
    out.x.row(k) = pv.dx.transpose();
    out.y.row(k) = pv.dy.transpose();
  }
  return out;
}

namespace {

struct FieldAt {
  Eigen::VectorXd vx, vy, jxx, jxy, jyx, jyy;  // j_ab = d(v_a)/d(x_b)
};

FieldAt field_at(const VectorField& w, const ReferenceBasis& rb, int k, const std::vector<Point2>& ref) {
  Tabulation t = rb.tabulate(ref), ph;
  to_physical(t, w.mesh->map(k).inverse, ph);
  const Eigen::VectorXd cx = w.x.row(k).transpose(), cy = w.y.row(k).transpose();
  return {ph.val * cx, ph.val * cy, ph.dx * cx, ph.dy * cx, ph.dx * cy, ph.dy * cy};
}

std::vector<Point2> face_refs(const Mesh& mesh, int k, int f, const QuadratureRule& rule) {
  std::vector<Point2> ref(rule.size());
  for (int q = 0; q < rule.size(); ++q) ref[q] = mesh.map(k).to_reference(face_point(mesh, f, rule.parameter(q)));
  return ref;
}

}  // namespace

double C_T(const VectorField& w, const VectorField& v) {
  require(w.mesh == v.mesh && w.degree == v.degree, "C_T: fields must live on the same mesh and degree");
  const Mesh& mesh = *w.mesh;
  const ReferenceBasis rb(w.degree);
  const QuadratureRule tri = quadrature(QuadratureDomain::Triangle, 2 * w.degree);
  const QuadratureRule seg = quadrature(QuadratureDomain::Segment, 2 * w.degree + 1);
  std::vector<Point2> pts(tri.size());
  for (int q = 0; q < tri.size(); ++q) pts[q] = tri.point(q);

  double total = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const FieldAt a = field_at(w, rb, k, pts), b = field_at(v, rb, k, pts);
    for (int q = 0; q < tri.size(); ++q) {
      const double grad = a.jxx[q] * b.jxx[q] + a.jxy[q] * b.jxy[q] + a.jyx[q] * b.jyx[q] + a.jyy[q] * b.jyy[q];
      const double div = (a.jxx[q] + a.jyy[q]) * (b.jxx[q] + b.jyy[q]);
      const double curl = (a.jyx[q] - a.jxy[q]) * (b.jyx[q] - b.jxy[q]);
      total += tri.weights[q] * mesh.map(k).det * (grad - div - curl);
    }
  }

  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& face = mesh.faces()[f];
    const Vec2 n = face.normal, t = face.tangent();
    const int sides = face.boundary() ? 1 : 2;
    const int nq = seg.size();
    // Per quadrature point: jumps of v.t, v.n and averages of n^T J t, t^T J t for both fields.
    Eigen::VectorXd jwt = Eigen::VectorXd::Zero(nq), jvt = jwt, jwn = jwt, jvn = jwt;
    Eigen::VectorXd awnt = jwt, avnt = jwt, awtt = jwt, avtt = jwt;
    for (int s = 0; s < sides; ++s) {
      const int k = face.elements[s];
      const auto ref = face_refs(mesh, k, f, seg);
      const FieldAt a = field_at(w, rb, k, ref), b = field_at(v, rb, k, ref);
      const double js = face.boundary() ? 1.0 : (s == 0 ? 1.0 : -1.0);
      const double as = face.boundary() ? 1.0 : 0.5;
      for (int q = 0; q < nq; ++q) {
        Mat2 ja, jb;
        ja << a.jxx[q], a.jxy[q], a.jyx[q], a.jyy[q];
        jb << b.jxx[q], b.jxy[q], b.jyx[q], b.jyy[q];
        const Vec2 va(a.vx[q], a.vy[q]), vb(b.vx[q], b.vy[q]);
        jwt[q] += js * va.dot(t);
        jvt[q] += js * vb.dot(t);
        jwn[q] += js * va.dot(n);
        jvn[q] += js * vb.dot(n);
        awnt[q] += as * n.dot(ja * t);
        avnt[q] += as * n.dot(jb * t);
        awtt[q] += as * t.dot(ja * t);
        avtt[q] += as * t.dot(jb * t);
      }
    }
    for (int q = 0; q < nq; ++q) {
      const double wq = seg.weights[q] * face.length;
      total -= wq * (awnt[q] * jvt[q] + avnt[q] * jwt[q]);
      if (!face.boundary()) total += wq * (awtt[q] * jvn[q] + avtt[q] * jwn[q]);
    }
  }
  return total;
}

VectorNorms vector_norms(const VectorField& v) {
  const Mesh& mesh = *v.mesh;
  const ReferenceBasis rb(v.degree);
  const QuadratureRule tri = quadrature(QuadratureDomain::Triangle, 2 * v.degree);
  const QuadratureRule seg = quadrature(QuadratureDomain::Segment, 2 * v.degree);
  std::vector<Point2> pts(tri.size());
  for (int q = 0; q < tri.size(); ++q) pts[q] = tri.point(q);
  double g2 = 0, m2 = 0, dc2 = 0, j2 = 0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const FieldAt a = field_at(v, rb, k, pts);
    for (int q = 0; q < tri.size(); ++q) {
      const double w = tri.weights[q] * mesh.map(k).det;
      g2 += w * (a.jxx[q] * a.jxx[q] + a.jxy[q] * a.jxy[q] + a.jyx[q] * a.jyx[q] + a.jyy[q] * a.jyy[q]);
      m2 += w * (a.vx[q] * a.vx[q] + a.vy[q] * a.vy[q]);
      const double div = a.jxx[q] + a.jyy[q], curl = a.jyx[q] - a.jxy[q];
      dc2 += w * (div * div + curl * curl);
    }
  }
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& face = mesh.faces()[f];
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(seg.size(), 2);
    for (int s = 0; s < (face.boundary() ? 1 : 2); ++s) {
      const FieldAt a = field_at(v, rb, face.elements[s], face_refs(mesh, face.elements[s], f, seg));
      const double js = s == 0 ? 1.0 : -1.0;
      jump.col(0) += js * a.vx;
      jump.col(1) += js * a.vy;
    }
    for (int q = 0; q < seg.size(); ++q) {
      const Vec2 jq = jump.row(q).transpose();
      const double val = face.boundary() ? std::pow(jq.dot(face.tangent()), 2) : jq.squaredNorm();
      j2 += seg.weights[q] * val;  // h^{-1} cancels the face length
    }
  }
  VectorNorms out;
  out.jump = std::sqrt(j2);
  out.norm = std::sqrt(g2 + m2 + j2);
  out.gradient = std::sqrt(g2);
  out.div_curl = std::sqrt(dc2);
  return out;
}

VectorField subtract(const VectorField& a, const VectorField& b) {
  require(a.mesh == b.mesh && a.degree == b.degree, "subtract: incompatible fields");
  VectorField out = a;
  out.x -= b.x;
  out.y -= b.y;
  return out;
}

Vec2 enrich_node(std::span<const Vec2> values, std::span<const Vec2> normals, double angle_tol) {
  require(!values.empty(), "enrich_node: no values");
  if (normals.empty()) {
    Vec2 s = Vec2::Zero();
    for (const Vec2& v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  const Vec2 n = normals[0];
  for (const Vec2& m : normals) {
    const double angle = std::atan2(std::abs(n.x() * m.y() - n.y() * m.x()), n.dot(m));
    if (angle > angle_tol) return Vec2::Zero();
  }
  double s = 0.0;
  for (const Vec2& v : values) s += v.dot(n);
  return (s / static_cast<double>(values.size())) * n;
}

namespace {

// Global node keys shared between elements: vertices, (face, position from lower vertex), interior.
struct NodeKey {
  int kind, a, b;
  bool operator<(const NodeKey& o) const { return std::tie(kind, a, b) < std::tie(o.kind, o.a, o.b); }
};

NodeKey node_key(const Mesh& mesh, const ReferenceBasis& rb, int k, int i) {
  const NodeLocation& loc = rb.location(i);
  const auto& tri = mesh.elements()[k];
  if (loc.kind == NodeLocation::Vertex) return {0, tri[loc.entity], 0};
  if (loc.kind == NodeLocation::Edge) {
    const int f = mesh.element_face(k, loc.entity);
    const int start = tri[(loc.entity + 1) % 3];
    const int pos = start == mesh.faces()[f].vertices[0] ? loc.position : rb.degree() - loc.position;
    return {1, f, pos};
  }
  return {2, k, i};
}

}  // namespace

VectorField enrich_vector(const VectorField& w, double angle_tol) {
  const Mesh& mesh = *w.mesh;
  const ReferenceBasis rb(w.degree);
  std::map<NodeKey, std::vector<std::pair<int, int>>> nodes;
  for (int k = 0; k < mesh.num_elements(); ++k)
    for (int i = 0; i < rb.size(); ++i) nodes[node_key(mesh, rb, k, i)].push_back({k, i});

  std::vector<std::vector<Vec2>> vertex_normals(mesh.num_vertices());
  for (const Face& f : mesh.faces()) {
    if (!f.boundary()) continue;
    vertex_normals[f.vertices[0]].push_back(f.normal);
    vertex_normals[f.vertices[1]].push_back(f.normal);
  }

  VectorField out(w.mesh, w.degree);
  std::vector<Vec2> values, normals;
  for (const auto& [key, members] : nodes) {
    values.clear();
    normals.clear();
    for (auto [k, i] : members) values.emplace_back(w.x(k, i), w.y(k, i));
    if (key.kind == 0) {
      normals = vertex_normals[key.a];
    } else if (key.kind == 1 && mesh.faces()[key.a].boundary()) {
      normals.push_back(mesh.faces()[key.a].normal);
    }
    const Vec2 e = enrich_node(values, normals, angle_tol);
    for (auto [k, i] : members) {
      out.x(k, i) = e.x();
      out.y(k, i) = e.y();
    }
  }
  return out;
}

FEFunction enrich_scalar(const FEFunction& v) {
  const FESpace& src = *v.space;
  require(src.continuity() == 0, "enrich_scalar: input must be a discontinuous function");
  auto target = std::make_shared<const FESpace>(src.mesh_ptr(), 1, src.degree());
  FEFunction out(target);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(target->num_dofs());
  for (int k = 0; k < src.mesh().num_elements(); ++k) {
    const Eigen::VectorXd c = v.local(k);
    const auto dofs = target->element_dofs(k);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      if (dofs[i] < 0) continue;
      out.coeffs[dofs[i]] += c[i];
      count[dofs[i]] += 1.0;
    }
  }
  out.coeffs = out.coeffs.cwiseQuotient(count);
  return out;
}

MirandaTalentiGap miranda_talenti_gap(const FEFunction& v) {
  const Norms n = norms(v, 0.0);
  return {n.hessian, n.laplacian, n.jump};
}

}  // namespace isaacs
