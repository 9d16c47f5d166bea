// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/forms.hpp"

#include <cmath>
#include <string>

namespace isaacs {

MethodParams MethodParams::resolved() const {
  MethodParams r = *this;
  require(r.s == 0 || r.s == 1, "method: s must be 0 or 1");
  require(r.p >= 2 && r.p <= 6, "method: p must be in [2, 6]");
  if (r.q < 0) r.q = r.p - 2;
  require(r.q >= r.p - 2, "method: lifting degree must satisfy q >= p - 2");
  require(r.theta >= 0.0 && r.theta <= 1.0, "method: theta must lie in [0, 1]");
  require(r.chi == 0 || r.chi == 1, "method: chi must be 0 or 1");
  if (r.sigma < 0) r.sigma = 10.0 * r.p * r.p;
  if (r.rho < 0) r.rho = 10.0 * std::pow(r.p, 4);
  require(r.sigma >= 0.0 && r.rho >= 0.0, "method: sigma and rho must be nonnegative");
  require(r.lambda >= 0.0, "method: lambda must be nonnegative");
  return r;
}

ThetaWindow theta_window(double nu) {
  require(nu > 0.0 && nu <= 1.0, "theta_window: nu must lie in (0, 1]");
  const double r = std::sqrt(nu);
  return {(1.0 - r) / 2.0, (1.0 + r) / 2.0};
}

double monotonicity_mu(double theta, double nu) {
  require(theta >= 0.0 && theta < 1.0, "monotonicity_mu: theta must lie in [0, 1)");
  return theta - (1.0 - nu) / (4.0 * (1.0 - theta));
}

void face_trace(const FESpace& space, const FaceTables& tables, int f, FaceTrace& out) {
  const Mesh& mesh = space.mesh();
  const Face& face = mesh.faces()[f];
  const int nl = space.num_local();
  const int sides = face.boundary() ? 1 : 2;
  const int nq = tables.rule.size();
  out.interior = !face.boundary();
  out.h = face.length;
  out.normal = face.normal;
  out.tangent = face.tangent();
  out.weights.resize(nq);
  for (int q = 0; q < nq; ++q) out.weights[q] = tables.rule.weights[q] * face.length;
  out.dofs.resize(static_cast<std::size_t>(sides) * nl);
  for (auto* m : {&out.jump, &out.jump_dn, &out.jump_dt, &out.avg, &out.avg_dn, &out.avg_tn, &out.avg_tt})
    m->resize(nq, sides * nl);

  const Vec2 n = face.normal, t = face.tangent();
  Tabulation tab;
  for (int s = 0; s < sides; ++s) {
    const int k = face.elements[s];
    const auto dofs = space.element_dofs(k);
    std::copy(dofs.begin(), dofs.end(), out.dofs.begin() + s * nl);
    face_tabulation(space, tables, f, s, tab);
    const double js = out.interior ? (s == 0 ? 1.0 : -1.0) : 1.0;
    const double as = out.interior ? 0.5 : 1.0;
    const auto cols = Eigen::seqN(s * nl, nl);
    const Eigen::MatrixXd dn = n[0] * tab.dx + n[1] * tab.dy;
    const Eigen::MatrixXd dt = t[0] * tab.dx + t[1] * tab.dy;
    const Eigen::MatrixXd htn =
        t[0] * (n[0] * tab.dxx + n[1] * tab.dxy) + t[1] * (n[0] * tab.dxy + n[1] * tab.dyy);
    const Eigen::MatrixXd htt =
        t[0] * (t[0] * tab.dxx + t[1] * tab.dxy) + t[1] * (t[0] * tab.dxy + t[1] * tab.dyy);
    out.jump(Eigen::all, cols) = js * tab.val;
    out.jump_dn(Eigen::all, cols) = js * dn;
    out.jump_dt(Eigen::all, cols) = js * dt;
    out.avg(Eigen::all, cols) = as * tab.val;
    out.avg_dn(Eigen::all, cols) = as * dn;
    out.avg_tn(Eigen::all, cols) = as * htn;
    out.avg_tt(Eigen::all, cols) = as * htt;
  }
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void scatter(const std::vector<int>& rows, const std::vector<int>& cols, const Eigen::MatrixXd& local,
             Triplets& out) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0 || local(i, j) == 0.0) continue;
      out.emplace_back(rows[i], cols[j], local(i, j));
    }
  }
}

// A^T diag(w) B
Eigen::MatrixXd wprod(const Eigen::MatrixXd& a, const Eigen::VectorXd& w, const Eigen::MatrixXd& b) {
  return a.transpose() * w.asDiagonal() * b;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& a, const Eigen::VectorXd& w, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd m = wprod(a, w, b);
  return m + m.transpose();
}

}  // namespace

SparseMatrix assemble_bilinear(const FESpace& space, const BilinearTerms& c) {
  const Mesh& mesh = space.mesh();
  const int p = space.degree();
  const ElementTables et(space.basis(), 2 * p);
  const FaceTables ft(space.basis(), 2 * p + 1);
  Triplets trip;
  Tabulation tab;
  Eigen::VectorXd w(et.rule.size());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    element_tabulation(space, et, k, tab);
    for (int q = 0; q < et.rule.size(); ++q) w[q] = et.rule.weights[q] * mesh.map(k).det;
    const Eigen::MatrixXd lap = tab.dxx + tab.dyy;
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(space.num_local(), space.num_local());
    if (c.hessian != 0.0)
      local += c.hessian * (wprod(tab.dxx, w, tab.dxx) + 2.0 * wprod(tab.dxy, w, tab.dxy) + wprod(tab.dyy, w, tab.dyy));
    if (c.laplacian != 0.0) local += c.laplacian * wprod(lap, w, lap);
    if (c.laplacian_mass != 0.0) local += c.laplacian_mass * sym(lap, w, tab.val);
    if (c.gradient != 0.0) local += c.gradient * (wprod(tab.dx, w, tab.dx) + wprod(tab.dy, w, tab.dy));
    if (c.mass != 0.0) local += c.mass * wprod(tab.val, w, tab.val);
    const auto d = space.element_dofs(k);
    const std::vector<int> dofs(d.begin(), d.end());
    scatter(dofs, dofs, local, trip);
  }
  const bool faces = c.face_hessian != 0.0 || c.face_lambda != 0.0 || c.sigma != 0.0 || c.rho != 0.0;
  FaceTrace tr;
  for (int f = 0; faces && f < mesh.num_faces(); ++f) {
    face_trace(space, ft, f, tr);
    const Eigen::VectorXd& fw = tr.weights;
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(tr.dofs.size(), tr.dofs.size());
    if (c.face_hessian != 0.0) {
      local -= c.face_hessian * sym(tr.jump_dt, fw, tr.avg_tn);
      if (tr.interior) local += c.face_hessian * sym(tr.jump_dn, fw, tr.avg_tt);
    }
    if (c.face_lambda != 0.0) {
      local -= c.face_lambda * sym(tr.jump, fw, tr.avg_dn);
      if (tr.interior) local -= c.face_lambda * sym(tr.jump_dn, fw, tr.avg);
    }
    if (c.sigma != 0.0) {
      Eigen::MatrixXd g = wprod(tr.jump_dt, fw, tr.jump_dt);
      if (tr.interior) g += wprod(tr.jump_dn, fw, tr.jump_dn);
      local += c.sigma / tr.h * g;
    }
    if (c.rho != 0.0) local += c.rho / (tr.h * tr.h * tr.h) * wprod(tr.jump, fw, tr.jump);
    scatter(tr.dofs, tr.dofs, local, trip);
  }
  SparseMatrix m(space.num_dofs(), space.num_dofs());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

BilinearTerms stabilization_terms() {
  BilinearTerms t;
  t.hessian = 1.0;
  t.laplacian = -1.0;
  t.face_hessian = 1.0;
  return t;
}

BilinearTerms bstar_terms(double lambda) {
  BilinearTerms t;
  t.hessian = 1.0;
  t.gradient = 2.0 * lambda;
  t.mass = lambda * lambda;
  t.face_hessian = 1.0;
  t.face_lambda = lambda;
  return t;
}

BilinearTerms penalty_terms(double sigma, double rho) {
  BilinearTerms t;
  t.sigma = sigma;
  t.rho = rho;
  return t;
}

BilinearTerms operator_product_terms(double lambda) {
  BilinearTerms t;
  t.laplacian = 1.0;
  t.laplacian_mass = -lambda;
  t.mass = lambda * lambda;
  return t;
}

namespace {

double evaluate_form(const FEFunction& w, const FEFunction& v, const BilinearTerms& terms) {
  require(w.space == v.space, "bilinear form arguments must share a space");
  return w.coeffs.dot(assemble_bilinear(*v.space, terms) * v.coeffs);
}

}  // namespace

double S_T(const FEFunction& w, const FEFunction& v) { return evaluate_form(w, v, stabilization_terms()); }
double B_star(const FEFunction& w, const FEFunction& v, double lambda) {
  return evaluate_form(w, v, bstar_terms(lambda));
}
double J_T(const FEFunction& w, const FEFunction& v, double sigma, double rho) {
  return evaluate_form(w, v, penalty_terms(sigma, rho));
}
double LL_product(const FEFunction& w, const FEFunction& v, double lambda) {
  return evaluate_form(w, v, operator_product_terms(lambda));
}

namespace {

// Mass matrix of the degree-q basis on element k.
Eigen::MatrixXd lifting_mass(const Mesh& mesh, const ElementTables& qt, int k) {
  Eigen::VectorXd w(qt.rule.size());
  for (int i = 0; i < qt.rule.size(); ++i) w[i] = qt.rule.weights[i] * mesh.map(k).det;
  return wprod(qt.ref.val, w, qt.ref.val);
}

const Tabulation& side_table(const Mesh& mesh, const FaceTables& tables, int f, int side) {
  const Face& face = mesh.faces()[f];
  const int e = face.local_edge[side];
  const bool reversed = mesh.elements()[face.elements[side]][(e + 1) % 3] != face.vertices[0];
  return tables.ref[e][reversed ? 1 : 0];
}

}  // namespace

Lifting lift_face(const FESpace& space, int f, const std::vector<double>& g, int q, int rule_order) {
  const Mesh& mesh = space.mesh();
  require(f >= 0 && f < mesh.num_faces(), "lift_face: face index out of range");
  const Face& face = mesh.faces()[f];
  require(!face.boundary(), "lift_face: lifting is defined on interior faces only");
  require(q >= 0, "lift_face: degree must be nonnegative");
  const ReferenceBasis qb(q);
  const FaceTables ft(qb, rule_order);
  require(static_cast<int>(g.size()) == ft.rule.size(), "lift_face: data size does not match the face rule");
  const ElementTables qt(qb, 2 * q);
  Lifting out;
  out.q = q;
  for (int s = 0; s < 2; ++s) {
    const Tabulation& psi = side_table(mesh, ft, f, s);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(qb.size());
    for (int i = 0; i < ft.rule.size(); ++i) b += 0.5 * ft.rule.weights[i] * face.length * g[i] * psi.val.row(i).transpose();
    Eigen::VectorXd c = lifting_mass(mesh, qt, face.elements[s]).ldlt().solve(b);
    (s == 0 ? out.side0 : out.side1) = c;
  }
  return out;
}

std::vector<TestOperator> build_test_operators(const FESpace& space, const ElementTables& tables,
                                               const MethodParams& params) {
  const Mesh& mesh = space.mesh();
  const int nl = space.num_local();
  const int nq = tables.rule.size();
  std::vector<TestOperator> ops(mesh.num_elements());
  Tabulation tab;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    element_tabulation(space, tables, k, tab);
    TestOperator& op = ops[k];
    const auto d = space.element_dofs(k);
    op.dofs.assign(d.begin(), d.end());
    op.table = tab.dxx + tab.dyy - params.lambda * tab.val;
  }
  if (params.chi == 0) return ops;

  const ReferenceBasis qb(params.q);
  const ElementTables qt(qb, 2 * params.q);
  const FaceTables ft_p(space.basis(), 2 * space.degree() + 1);
  const FaceTables ft_q(qb, 2 * space.degree() + 1);
  std::vector<Point2> pts(nq);
  for (int i = 0; i < nq; ++i) pts[i] = tables.rule.point(i);
  const Eigen::MatrixXd psi_el = qb.tabulate(pts).val;  // nq x nq_basis
  Tabulation side;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    TestOperator& op = ops[k];
    const Eigen::LDLT<Eigen::MatrixXd> mass(lifting_mass(mesh, qt, k));
    for (int e = 0; e < 3; ++e) {
      const int f = mesh.element_face(k, e);
      const Face& face = mesh.faces()[f];
      if (face.boundary()) continue;
      const int sk = face.elements[0] == k ? 0 : 1;
      const Tabulation& psi = side_table(mesh, ft_q, f, sk);
      Eigen::VectorXd w(ft_q.rule.size());
      for (int i = 0; i < w.size(); ++i) w[i] = 0.5 * ft_q.rule.weights[i] * face.length;
      for (int s = 0; s < 2; ++s) {
        face_tabulation(space, ft_p, f, s, side);
        const double js = s == 0 ? 1.0 : -1.0;
        const Eigen::MatrixXd g = js * (face.normal[0] * side.dx + face.normal[1] * side.dy);
        const Eigen::MatrixXd lifted = psi_el * mass.solve(wprod(psi.val, w, g));  // nq x nl
        if (face.elements[s] == k) {
          op.table.leftCols(nl) -= lifted;
        } else {
          const auto nd = space.element_dofs(face.elements[s]);
          op.dofs.insert(op.dofs.end(), nd.begin(), nd.end());
          op.table.conservativeResize(Eigen::NoChange, op.table.cols() + nl);
          op.table.rightCols(nl) = -lifted;
        }
      }
    }
  }
  return ops;
}

Eigen::MatrixXd lifted_laplacian(const FEFunction& v, const MethodParams& params, int quadrature_order) {
  MethodParams p = params.resolved();
  p.lambda = 0.0;
  const FESpace& space = *v.space;
  const ElementTables et(space.basis(), quadrature_order);
  const auto ops = build_test_operators(space, et, p);
  Eigen::MatrixXd out(space.mesh().num_elements(), et.rule.size());
  // Each column block of a table belongs to one element: own block first, then neighbors by local edge.
  for (int k = 0; k < space.mesh().num_elements(); ++k) {
    const auto& op = ops[k];
    const int nl = space.num_local();
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(et.rule.size());
    int block = 0;
    vals += op.table.leftCols(nl) * v.local(k);
    for (int e = 0; e < 3 && p.chi == 1; ++e) {
      const Face& face = space.mesh().faces()[space.mesh().element_face(k, e)];
      if (face.boundary()) continue;
      const int nb = face.elements[0] == k ? face.elements[1] : face.elements[0];
      ++block;
      vals += op.table.middleCols(block * nl, nl) * v.local(nb);
    }
    out.row(k) = vals.transpose();
  }
  return out;
}

double Evaluation::scaled_norm() const {
  const double r = residual.norm();
  const double b = rhs.norm();
  return b > 0.0 ? r / b : r;
}

Discretization::Discretization(std::shared_ptr<const FESpace> space, std::shared_ptr<const IsaacsProblem> problem,
                               const MethodParams& params)
    : space_(std::move(space)),
      problem_(std::move(problem)),
      params_(params.resolved()),
      et_(space_->basis(), 2 * space_->degree()) {
  require(params_.p == space_->degree() && params_.s == space_->continuity(),
          "method parameters do not match the finite element space");
  require(params_.lambda == problem_->lambda(), "method lambda must match the problem");
  const Mesh& mesh = space_->mesh();
  elements_.resize(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k) {
    ElementData& ed = elements_[k];
    element_tabulation(*space_, et_, k, ed.trial);
    ed.points.resize(et_.rule.size());
    ed.weights.resize(et_.rule.size());
    for (int q = 0; q < et_.rule.size(); ++q) {
      ed.points[q] = mesh.map(k).to_physical(et_.rule.point(q));
      ed.weights[q] = et_.rule.weights[q] * mesh.map(k).det;
    }
  }
  test_ = build_test_operators(*space_, et_, params_);
  BilinearTerms t = stabilization_terms();
  t.hessian *= params_.theta;
  t.laplacian *= params_.theta;
  t.face_hessian *= params_.theta;
  t.sigma = params_.sigma;
  t.rho = params_.rho;
  linear_ = assemble_bilinear(*space_, t);
}

namespace {

Eigen::VectorXd apply(const Eigen::MatrixXd& table, const ExtendedVector& c) {
  Eigen::VectorXd out(table.rows());
  for (Eigen::Index q = 0; q < table.rows(); ++q) {
    long double acc = 0.0L;
    for (Eigen::Index i = 0; i < table.cols(); ++i) acc += static_cast<long double>(table(q, i)) * c[i];
    out[q] = static_cast<double>(acc);
  }
  return out;
}

template <class Vec>
void add_to(Vec& r, const std::vector<int>& dofs, const Eigen::VectorXd& local) {
  for (std::size_t i = 0; i < dofs.size(); ++i)
    if (dofs[i] >= 0) r[dofs[i]] += local[i];
}

}  // namespace

ExtendedVector multiply_extended(const SparseMatrix& a, const ExtendedVector& x, const Eigen::VectorXd* subtract) {
  ExtendedVector y(a.rows());
  for (int i = 0; i < a.outerSize(); ++i) {
    long double acc = subtract ? -static_cast<long double>((*subtract)[i]) : 0.0L;
    for (SparseMatrix::InnerIterator it(a, i); it; ++it)
      acc += static_cast<long double>(it.value()) * x[it.col()];
    y[i] = acc;
  }
  return y;
}

void Discretization::sweep(const ExtendedVector& w, const FrozenControls* alpha_field, Evaluation& isaacs,
                           Evaluation* hjb) const {
  require(w.size() == num_dofs(), "residual: coefficient vector has the wrong length");
  const Mesh& mesh = space_->mesh();
  const int ne = mesh.num_elements();
  const int nq = points_per_element();
  const int nb = problem_->num_beta();
  const int nl = space_->num_local();
  // Residuals are accumulated in extended precision: the penalty part and the
  // operator part cancel to many digits near convergence.
  const ExtendedVector lw = multiply_extended(linear_, w);
  ExtendedVector ri = lw, rh;
  if (hjb) rh = lw;
  auto init = [&](Evaluation& e) {
    e.rhs = Eigen::VectorXd::Zero(num_dofs());
    e.controls.points_per_element = nq;
    e.controls.alpha.assign(static_cast<std::size_t>(ne) * nq, 0);
    e.controls.beta.assign(static_cast<std::size_t>(ne) * nq, 0);
  };
  init(isaacs);
  if (hjb) init(*hjb);

  ControlScratch scratch;
  Eigen::VectorXd fi(nq), gi(nq), fh(nq), gh(nq);
  for (int k = 0; k < ne; ++k) {
    const ElementData& ed = elements_[k];
    const auto dofs = space_->element_dofs(k);
    ExtendedVector c(nl);
    for (int i = 0; i < nl; ++i) c[i] = dofs[i] >= 0 ? w[dofs[i]] : 0.0L;
    const Eigen::VectorXd val = apply(ed.trial.val, c), dx = apply(ed.trial.dx, c), dy = apply(ed.trial.dy, c);
    const Eigen::VectorXd hxx = apply(ed.trial.dxx, c), hxy = apply(ed.trial.dxy, c), hyy = apply(ed.trial.dyy, c);
    for (int q = 0; q < nq; ++q) {
      PointState st;
      st.M << hxx[q], hxy[q], hxy[q], hyy[q];
      st.g << dx[q], dy[q];
      st.u = val[q];
      st.x = ed.points[q];
      const ControlView v = problem_->evaluate(st.x, scratch);
      const std::size_t idx = static_cast<std::size_t>(k) * nq + q;
      const ControlChoice ch = F_gamma_point(v, nb, st);
      isaacs.controls.alpha[idx] = ch.alpha;
      isaacs.controls.beta[idx] = ch.beta;
      const int j = ch.alpha * nb + ch.beta;
      fi[q] = ed.weights[q] * ch.value;
      gi[q] = ed.weights[q] * v.gamma[j] * v.f[j];
      if (hjb) {
        const ControlChoice hc = sup_beta_point(v, nb, alpha_field->alpha[idx], st);
        hjb->controls.alpha[idx] = hc.alpha;
        hjb->controls.beta[idx] = hc.beta;
        const int jh = hc.alpha * nb + hc.beta;
        fh[q] = ed.weights[q] * hc.value;
        gh[q] = ed.weights[q] * v.gamma[jh] * v.f[jh];
      }
    }
    const TestOperator& op = test_[k];
    add_to(ri, op.dofs, op.table.transpose() * fi);
    add_to(isaacs.rhs, op.dofs, op.table.transpose() * gi);
    if (hjb) {
      add_to(rh, op.dofs, op.table.transpose() * fh);
      add_to(hjb->rhs, op.dofs, op.table.transpose() * gh);
    }
  }
  isaacs.residual = ri.cast<double>();
  if (hjb) hjb->residual = rh.cast<double>();
}

Evaluation Discretization::residual(const Eigen::VectorXd& w) const { return residual(w.cast<long double>().eval()); }

Evaluation Discretization::residual(const ExtendedVector& w) const {
  Evaluation e;
  sweep(w, nullptr, e, nullptr);
  return e;
}

void Discretization::residual_pair(const ExtendedVector& w, const FrozenControls& alpha_field, Evaluation& isaacs,
                                   Evaluation& hjb) const {
  require(alpha_field.points_per_element == points_per_element() &&
              alpha_field.alpha.size() == static_cast<std::size_t>(space_->mesh().num_elements()) * points_per_element(),
          "residual: alpha field does not match the discretization");
  sweep(w, &alpha_field, isaacs, &hjb);
}

SparseSystem Discretization::linearize(const FrozenControls& fc) const {
  const Mesh& mesh = space_->mesh();
  const int nq = points_per_element();
  require(fc.points_per_element == nq && fc.alpha.size() == static_cast<std::size_t>(mesh.num_elements()) * nq &&
              fc.beta.size() == fc.alpha.size(),
          "linearize: frozen controls do not match the discretization");
  const int nb = problem_->num_beta();
  Triplets trip;
  SparseSystem sys;
  sys.rhs = Eigen::VectorXd::Zero(num_dofs());
  ControlScratch scratch;
  const int nl = space_->num_local();
  Eigen::MatrixXd trial(nq, nl);
  Eigen::VectorXd g(nq);
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const ElementData& ed = elements_[k];
    for (int q = 0; q < nq; ++q) {
      const std::size_t idx = static_cast<std::size_t>(k) * nq + q;
      require(fc.alpha[idx] >= 0 && fc.alpha[idx] < problem_->num_alpha() && fc.beta[idx] >= 0 && fc.beta[idx] < nb,
              "linearize: control index out of range");
      const int j = fc.alpha[idx] * nb + fc.beta[idx];
      const ControlView v = problem_->evaluate(ed.points[q], scratch);
      const double gw = v.gamma[j] * ed.weights[q];
      trial.row(q) = gw * (v.a11[j] * ed.trial.dxx.row(q) + 2.0 * v.a12[j] * ed.trial.dxy.row(q) +
                           v.a22[j] * ed.trial.dyy.row(q) + v.b1[j] * ed.trial.dx.row(q) +
                           v.b2[j] * ed.trial.dy.row(q) - v.c[j] * ed.trial.val.row(q));
      g[q] = gw * v.f[j];
    }
    const TestOperator& op = test_[k];
    const auto d = space_->element_dofs(k);
    scatter(op.dofs, std::vector<int>(d.begin(), d.end()), op.table.transpose() * trial, trip);
    add_to(sys.rhs, op.dofs, op.table.transpose() * g);
  }
  SparseMatrix n(num_dofs(), num_dofs());
  n.setFromTriplets(trip.begin(), trip.end());
  sys.matrix = n + linear_;
  return sys;
}

}  // namespace isaacs
