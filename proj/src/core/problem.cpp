// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/problem.hpp"

#include <cmath>
#include <limits>

namespace isaacs {

void ControlScratch::resize(std::size_t n) {
  for (auto* v : {&a11, &a12, &a22, &b1, &b2, &c, &f, &gamma}) v->resize(n);
}

double renormalization(const Mat2& a, const Vec2& b, double c, double lambda) {
  const double tr = a.trace();
  const double fro2 = a.squaredNorm();
  if (lambda == 0.0) {
    require(b.isZero(0.0) && c == 0.0, "renormalization: lambda = 0 requires vanishing b and c");
    return tr / fro2;
  }
  return (tr + c / lambda) / (fro2 + b.squaredNorm() / (2.0 * lambda) + (c / lambda) * (c / lambda));
}

IsaacsProblem::IsaacsProblem(ControlGrid grid, double lambda, bool lower_order)
    : grid_(std::move(grid)), lambda_(lambda), lower_order_(lower_order) {
  require(!grid_.alpha.empty() && !grid_.beta.empty(), "control grid must be nonempty");
  require(lambda >= 0.0, "lambda must be nonnegative");
  require(lower_order == (lambda > 0.0), "lambda must be positive exactly when lower-order terms are present");
}

namespace {

void store(ControlScratch& s, std::size_t j, const Coefficients& co, double lambda) {
  s.a11[j] = co.a(0, 0);
  s.a12[j] = 0.5 * (co.a(0, 1) + co.a(1, 0));
  s.a22[j] = co.a(1, 1);
  s.b1[j] = co.b[0];
  s.b2[j] = co.b[1];
  s.c[j] = co.c;
  s.f[j] = co.f;
  s.gamma[j] = renormalization(co.a, co.b, co.c, lambda);
}

ControlView view_of(const ControlScratch& s) { return {s.a11, s.a12, s.a22, s.b1, s.b2, s.c, s.f, s.gamma}; }

}  // namespace

CallbackProblem::CallbackProblem(ControlGrid grid, double lambda, bool lower_order, Callback cb)
    : IsaacsProblem(std::move(grid), lambda, lower_order), cb_(std::move(cb)) {}

ControlView CallbackProblem::evaluate(const Point2& x, ControlScratch& scratch) const {
  const int na = num_alpha(), nb = num_beta();
  scratch.resize(static_cast<std::size_t>(na) * nb);
  Coefficients co;
  for (int ia = 0; ia < na; ++ia) {
    for (int ib = 0; ib < nb; ++ib) {
      co = Coefficients{};
      cb_(x, ia, ib, co);
      store(scratch, static_cast<std::size_t>(ia) * nb + ib, co, lambda());
    }
  }
  return view_of(scratch);
}

ConstantOperatorProblem::ConstantOperatorProblem(ControlGrid grid, double lambda, bool lower_order,
                                                 std::vector<Coefficients> coefficients, Forcing forcing)
    : IsaacsProblem(std::move(grid), lambda, lower_order), forcing_(std::move(forcing)) {
  require(static_cast<int>(coefficients.size()) == num_pairs(), "one coefficient set per control pair expected");
  fixed_.resize(coefficients.size());
  for (std::size_t j = 0; j < coefficients.size(); ++j) store(fixed_, j, coefficients[j], lambda);
}

ControlView ConstantOperatorProblem::evaluate(const Point2& x, ControlScratch& scratch) const {
  scratch.f.resize(num_pairs());
  forcing_(x, scratch.f);
  ControlView v = view_of(fixed_);
  v.f = scratch.f;
  return v;
}

ControlChoice sup_beta_point(const ControlView& v, int nb, int alpha, const PointState& s) {
  ControlChoice best{-std::numeric_limits<double>::infinity(), alpha, 0};
  for (int ib = 0; ib < nb; ++ib) {
    const double val = payoff(v, alpha * nb + ib, s);
    if (val > best.value) best.value = val, best.beta = ib;
  }
  return best;
}

ControlChoice F_gamma_point(const ControlView& v, int nb, const PointState& s) {
  const int na = static_cast<int>(v.gamma.size()) / nb;
  ControlChoice best{std::numeric_limits<double>::infinity(), 0, 0};
  for (int ia = 0; ia < na; ++ia) {
    const ControlChoice c = sup_beta_point(v, nb, ia, s);
    if (c.value < best.value) best = c;
  }
  return best;
}

double F_point(const ControlView& v, int nb, const PointState& s) {
  const int na = static_cast<int>(v.gamma.size()) / nb;
  double inf = std::numeric_limits<double>::infinity();
  for (int ia = 0; ia < na; ++ia) {
    double sup = -std::numeric_limits<double>::infinity();
    for (int ib = 0; ib < nb; ++ib) {
      const int j = ia * nb + ib;
      const double val = v.a11[j] * s.M(0, 0) + 2.0 * v.a12[j] * s.M(0, 1) + v.a22[j] * s.M(1, 1) +
                         v.b1[j] * s.g[0] + v.b2[j] * s.g[1] - v.c[j] * s.u - v.f[j];
      sup = std::max(sup, val);
    }
    inf = std::min(inf, sup);
  }
  return inf;
}

CordesReport verify_cordes(const IsaacsProblem& problem, std::span<const Point2> points) {
  CordesReport rep;
  rep.nu = std::numeric_limits<double>::infinity();
  ControlScratch scratch;
  const int nb = problem.num_beta();
  const double lambda = problem.lambda();
  for (const Point2& x : points) {
    const ControlView v = problem.evaluate(x, scratch);
    for (int j = 0; j < problem.num_pairs(); ++j) {
      const double tr = v.a11[j] + v.a22[j];
      const double fro2 = v.a11[j] * v.a11[j] + 2.0 * v.a12[j] * v.a12[j] + v.a22[j] * v.a22[j];
      double nu;
      if (problem.has_lower_order()) {
        const double num = tr + v.c[j] / lambda;
        const double den = fro2 + (v.b1[j] * v.b1[j] + v.b2[j] * v.b2[j]) / (2.0 * lambda) +
                           (v.c[j] / lambda) * (v.c[j] / lambda);
        nu = num * num / den - 2.0;
      } else {
        nu = tr * tr / fro2 - 1.0;
      }
      if (nu < rep.nu) {
        rep.nu = nu;
        rep.worst_point = x;
        rep.worst_alpha = j / nb;
        rep.worst_beta = j % nb;
      }
    }
  }
  rep.nu = std::min(rep.nu, 1.0);
  rep.satisfied = rep.nu > 0.0;
  return rep;
}

LipschitzCheck lipschitz_check_point(const IsaacsProblem& problem, const PointState& s1, const PointState& s2,
                                     double nu) {
  require((s1.x - s2.x).norm() == 0.0, "lipschitz_check_point: states must share the point");
  ControlScratch scratch;
  const ControlView v = problem.evaluate(s1.x, scratch);
  const int nb = problem.num_beta();
  const double lambda = problem.lambda();
  const double f1 = F_gamma_point(v, nb, s1).value;
  const double f2 = F_gamma_point(v, nb, s2).value;
  const Mat2 dM = s1.M - s2.M;
  const double norm = std::sqrt(dM.squaredNorm() + 2.0 * lambda * (s1.g - s2.g).squaredNorm() +
                                lambda * lambda * (s1.u - s2.u) * (s1.u - s2.u));
  const double l_lambda = dM.trace() - lambda * (s1.u - s2.u);
  LipschitzCheck out;
  out.lhs = std::abs(f1 - f2);
  out.rhs = (1.0 + std::sqrt(3.0)) * norm;
  out.refined_lhs = std::abs(f1 - f2 - l_lambda);
  out.refined_rhs = std::sqrt(std::max(0.0, 1.0 - nu)) * norm;
  return out;
}

}  // namespace isaacs
