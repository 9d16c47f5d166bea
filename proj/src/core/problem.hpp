// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "core/common.hpp"

namespace isaacs {

struct ControlGrid {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Coefficients of every control pair at one point; pair (ia, ib) is stored at ia * num_beta + ib.
struct ControlView {
  std::span<const double> a11, a12, a22, b1, b2, c, f, gamma;
};

/// Storage a problem may write into while evaluating a point.
struct ControlScratch {
  std::vector<double> a11, a12, a22, b1, b2, c, f, gamma;
  void resize(std::size_t n);
};

struct Coefficients {
  Mat2 a = Mat2::Identity();
  Vec2 b = Vec2::Zero();
  double c = 0.0;
  double f = 0.0;
};

/// Value, gradient and Hessian of a function at a point.
struct PointState {
  Mat2 M = Mat2::Zero();
  Vec2 g = Vec2::Zero();
  double u = 0.0;
  Point2 x = Point2::Zero();
};

/// gamma = Tr a / |a|^2 without lower-order terms, otherwise the lambda-weighted variant.
double renormalization(const Mat2& a, const Vec2& b, double c, double lambda);

class IsaacsProblem {
 public:
  IsaacsProblem(ControlGrid grid, double lambda, bool lower_order);
  virtual ~IsaacsProblem() = default;

  const ControlGrid& controls() const { return grid_; }
  int num_alpha() const { return static_cast<int>(grid_.alpha.size()); }
  int num_beta() const { return static_cast<int>(grid_.beta.size()); }
  int num_pairs() const { return num_alpha() * num_beta(); }
  double lambda() const { return lambda_; }
  bool has_lower_order() const { return lower_order_; }

  /// Coefficients of all control pairs at x. Spans may refer to scratch or to internal storage.
  virtual ControlView evaluate(const Point2& x, ControlScratch& scratch) const = 0;

 private:
  ControlGrid grid_;
  double lambda_;
  bool lower_order_;
};

/// Problem defined by a pointwise coefficient callback.
class CallbackProblem : public IsaacsProblem {
 public:
  using Callback = std::function<void(const Point2& x, int ia, int ib, Coefficients& out)>;
  CallbackProblem(ControlGrid grid, double lambda, bool lower_order, Callback cb);
  ControlView evaluate(const Point2& x, ControlScratch& scratch) const override;

 private:
  Callback cb_;
};

/// Problem whose operator coefficients do not depend on x; only the forcing does.
class ConstantOperatorProblem : public IsaacsProblem {
 public:
  using Forcing = std::function<void(const Point2& x, std::span<double> f)>;
  /// coefficients[ia * nb + ib] holds a, b, c (f ignored).
  ConstantOperatorProblem(ControlGrid grid, double lambda, bool lower_order, std::vector<Coefficients> coefficients,
                          Forcing forcing);
  ControlView evaluate(const Point2& x, ControlScratch& scratch) const override;

 private:
  ControlScratch fixed_;
  Forcing forcing_;
};

struct ControlChoice {
  double value = 0.0;
  int alpha = 0;
  int beta = 0;
};

/// gamma (a:M + b.g - c u - f) for pair j.
inline double payoff(const ControlView& v, int j, const PointState& s) {
  return v.gamma[j] * (v.a11[j] * s.M(0, 0) + 2.0 * v.a12[j] * s.M(0, 1) + v.a22[j] * s.M(1, 1) + v.b1[j] * s.g[0] +
                       v.b2[j] * s.g[1] - v.c[j] * s.u - v.f[j]);
}

/// min over alpha of max over beta of the renormalized payoff; ties go to the lowest index.
ControlChoice F_gamma_point(const ControlView& v, int num_beta, const PointState& s);
/// max over beta at a fixed alpha.
ControlChoice sup_beta_point(const ControlView& v, int num_beta, int alpha, const PointState& s);
/// Same inf-sup without renormalization.
double F_point(const ControlView& v, int num_beta, const PointState& s);

struct CordesReport {
  double nu = 0.0;  // min over samples, capped at 1
  bool satisfied = false;
  Point2 worst_point = Point2::Zero();
  int worst_alpha = -1;
  int worst_beta = -1;
};
CordesReport verify_cordes(const IsaacsProblem& problem, std::span<const Point2> points);

struct LipschitzCheck {
  double lhs = 0.0, rhs = 0.0;                  // |F(s1)-F(s2)| vs (1+sqrt(3)) |s1-s2|_lambda
  double refined_lhs = 0.0, refined_rhs = 0.0;  // with L_lambda(s1-s2) subtracted, factor sqrt(1-nu)
};
LipschitzCheck lipschitz_check_point(const IsaacsProblem& problem, const PointState& s1, const PointState& s2,
                                     double nu);

}  // namespace isaacs
