// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/estimate.hpp"

#include <cmath>

namespace isaacs {

Eigen::VectorXd face_jump_terms(const FEFunction& v) {
  const FESpace& space = *v.space;
  const Mesh& mesh = space.mesh();
  const FaceTables ft(space.basis(), 2 * space.degree() + 1);
  std::vector<double> params(ft.rule.size());
  for (int q = 0; q < ft.rule.size(); ++q) params[q] = ft.rule.parameter(q);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(mesh.num_elements());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Face& face = mesh.faces()[f];
    const FaceJumpAvg ja = face_jump_avg(v, f, params);
    const double h = face.length;
    double s = 0.0;
    for (int q = 0; q < ft.rule.size(); ++q) {
      const double w = ft.rule.weights[q] * h;
      if (!face.boundary()) s += w / h * ja.jump_grad.row(q).squaredNorm();
      s += w / (h * h * h) * ja.jump[q] * ja.jump[q];
    }
    if (face.boundary()) {
      out[face.elements[0]] += s;
    } else {
      out[face.elements[0]] += 0.5 * s;
      out[face.elements[1]] += 0.5 * s;
    }
  }
  return out;
}

Eigen::VectorXd estimate_eta(const FEFunction& v, const IsaacsProblem& problem, int order) {
  const FESpace& space = *v.space;
  const Mesh& mesh = space.mesh();
  if (order < 0) order = 2 * space.degree();
  const ElementTables et(space.basis(), order);
  Eigen::VectorXd eta2 = face_jump_terms(v);
  ControlScratch scratch;
  Tabulation tab;
  const int nb = problem.num_beta();
  for (int k = 0; k < mesh.num_elements(); ++k) {
    element_tabulation(space, et, k, tab);
    const Eigen::VectorXd c = v.local(k);
    const Eigen::VectorXd val = tab.val * c, dx = tab.dx * c, dy = tab.dy * c;
    const Eigen::VectorXd hxx = tab.dxx * c, hxy = tab.dxy * c, hyy = tab.dyy * c;
    double s = 0.0;
    for (int q = 0; q < et.rule.size(); ++q) {
      PointState st;
      st.M << hxx[q], hxy[q], hxy[q], hyy[q];
      st.g << dx[q], dy[q];
      st.u = val[q];
      st.x = mesh.map(k).to_physical(et.rule.point(q));
      const double fv = F_gamma_point(problem.evaluate(st.x, scratch), nb, st).value;
      s += et.rule.weights[q] * mesh.map(k).det * fv * fv;
    }
    eta2[k] += s;
  }
  return eta2.cwiseSqrt();
}

Eigen::VectorXd error_norm(const ExactSolution& u, const FEFunction& v, int order) {
  const FESpace& space = *v.space;
  const Mesh& mesh = space.mesh();
  if (order < 0) order = 2 * space.degree() + 2;
  const ElementTables et(space.basis(), order);
  Eigen::VectorXd err2 = face_jump_terms(v);
  Tabulation tab;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    element_tabulation(space, et, k, tab);
    const Eigen::VectorXd c = v.local(k);
    const Eigen::VectorXd val = tab.val * c, dx = tab.dx * c, dy = tab.dy * c;
    const Eigen::VectorXd hxx = tab.dxx * c, hxy = tab.dxy * c, hyy = tab.dyy * c;
    double s = 0.0;
    for (int q = 0; q < et.rule.size(); ++q) {
      double ue;
      Vec2 ge;
      Mat2 he;
      u.eval(mesh.map(k).to_physical(et.rule.point(q)), ue, ge, he);
      const double exx = he(0, 0) - hxx[q], exy = he(0, 1) - hxy[q], eyy = he(1, 1) - hyy[q];
      const double ex = ge[0] - dx[q], ey = ge[1] - dy[q], e0 = ue - val[q];
      s += et.rule.weights[q] * mesh.map(k).det *
           (exx * exx + 2.0 * exy * exy + eyy * eyy + ex * ex + ey * ey + e0 * e0);
    }
    err2[k] += s;
  }
  return err2.cwiseSqrt();
}

EstimatorReport estimate(const FEFunction& v, const IsaacsProblem& problem, const ExactSolution* u) {
  EstimatorReport r;
  r.eta_K = estimate_eta(v, problem);
  r.eta = r.eta_K.norm();
  if (u) {
    r.error_K = error_norm(*u, v);
    r.error = r.error_K.norm();
    r.effectivity = r.error > 0.0 ? r.eta / r.error : 0.0;
  }
  return r;
}

}  // namespace isaacs
