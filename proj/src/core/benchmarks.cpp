// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/benchmarks.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace isaacs {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<Point2> pentagon_vertices(double phi) {
  const double c = std::cos(kPi - phi), s = std::sin(kPi - phi);
  return {Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(c, 1), Point2(c, s)};
}

Mesh pentagon_mesh(double phi) {
  std::vector<Point2> v = pentagon_vertices(phi);
  Point2 center = Point2::Zero();
  for (const auto& p : v) center += p;
  center /= 5.0;
  v.push_back(center);
  std::vector<Mesh::Triangle> tris;
  for (int i = 0; i < 5; ++i) tris.push_back({5, i, (i + 1) % 5});
  return Mesh::build(std::move(v), std::move(tris)).refine_uniform().refine_uniform();
}

ExactSolution pentagon_solution(double phi) {
  const double k = kPi / (kPi - phi);
  ExactSolution u;
  u.eval = [k](const Point2& x, double& val, Vec2& grad, Mat2& hess) {
    val = 0.0;
    grad.setZero();
    hess.setZero();
    const double r = x.norm();
    if (r >= 0.5 || r == 0.0) return;
    const std::complex<double> z(x.x(), x.y());
    const std::complex<double> f0 = std::pow(z, k);
    const std::complex<double> f1 = k * std::pow(z, k - 1.0);
    const std::complex<double> f2 = k * (k - 1.0) * std::pow(z, k - 2.0);
    const double h = f0.imag();
    const Vec2 gh(f1.imag(), f1.real());
    Mat2 hh;
    hh << f2.imag(), f2.real(), f2.real(), -f2.imag();

    const double s = 4.0 * r * r - 1.0;
    const double eta = std::exp(1.0 / s);
    const double g1 = -8.0 * r / (s * s);
    const double g2 = -8.0 / (s * s) + 128.0 * r * r / (s * s * s);
    const double d1 = eta * g1;
    const double d2 = eta * (g1 * g1 + g2);
    const Vec2 e = x / r;
    const Vec2 geta = d1 * e;
    const Mat2 proj = e * e.transpose();
    const Mat2 heta = d2 * proj + (d1 / r) * (Mat2::Identity() - proj);

    val = -h * eta;
    grad = -(eta * gh + h * geta);
    hess = -(eta * hh + gh * geta.transpose() + geta * gh.transpose() + h * heta);
  };
  return u;
}

Mat2 pentagon_diffusion(double alpha, double beta) {
  const double c = std::cos(beta), s = std::sin(beta);
  Mat2 rot;
  rot << c, -s, s, c;
  const Vec2 d((std::cos(alpha) + std::sin(alpha)) / std::sqrt(2.0), (std::cos(alpha) - std::sin(alpha)) / std::sqrt(2.0));
  return rot * d.asDiagonal() * rot.transpose();
}

Benchmark pentagon_benchmark(const PentagonOptions& o) {
  require(o.phi > 0.0 && o.phi <= kPi / 4.0, "pentagon: phi must lie in (0, pi/4]");
  require(o.alpha_max >= 0.0 && o.alpha_max < kPi / 4.0, "pentagon: alpha_max must lie in [0, pi/4)");
  require(o.n_alpha >= 1 && o.n_beta >= 1, "pentagon: control grids must be nonempty");
  ControlGrid grid;
  for (int i = 0; i < o.n_alpha; ++i)
    grid.alpha.push_back(o.n_alpha == 1 ? 0.0 : o.alpha_max * i / (o.n_alpha - 1));
  for (int j = 0; j < o.n_beta; ++j) grid.beta.push_back(kPi * j / o.n_beta);

  std::vector<Coefficients> coeffs;
  for (double a : grid.alpha) {
    for (double b : grid.beta) {
      Coefficients c;
      c.a = pentagon_diffusion(a, b);
      coeffs.push_back(c);
    }
  }
  ExactSolution exact = pentagon_solution(o.phi);
  std::vector<Mat2> a_list;
  for (const auto& c : coeffs) a_list.push_back(c.a);
  auto forcing = [exact, a_list](const Point2& x, std::span<double> f) {
    double u;
    Vec2 g;
    Mat2 h;
    exact.eval(x, u, g, h);
    for (std::size_t j = 0; j < a_list.size(); ++j) f[j] = (a_list[j].array() * h.array()).sum();
  };
  Benchmark b{"pentagon",
              std::make_shared<ConstantOperatorProblem>(grid, 0.0, false, std::move(coeffs), forcing),
              exact, pentagon_mesh(o.phi)};
  return b;
}

Mesh unit_square_mesh() {
  return Mesh::build({Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)}, {{0, 1, 2}, {0, 2, 3}});
}

namespace {

ExactSolution sine_solution() {
  ExactSolution u;
  u.eval = [](const Point2& x, double& val, Vec2& grad, Mat2& hess) {
    const double sx = std::sin(kPi * x.x()), sy = std::sin(kPi * x.y());
    const double cx = std::cos(kPi * x.x()), cy = std::cos(kPi * x.y());
    val = sx * sy;
    grad << kPi * cx * sy, kPi * sx * cy;
    hess << -kPi * kPi * sx * sy, kPi * kPi * cx * cy, kPi * kPi * cx * cy, -kPi * kPi * sx * sy;
  };
  return u;
}

}  // namespace

Benchmark square_laplace_benchmark() {
  ControlGrid grid{{0.0}, {0.0}};
  ExactSolution exact = sine_solution();
  auto forcing = [exact](const Point2& x, std::span<double> f) {
    double u;
    Vec2 g;
    Mat2 h;
    exact.eval(x, u, g, h);
    f[0] = h.trace();
  };
  return {"square-laplace",
          std::make_shared<ConstantOperatorProblem>(grid, 0.0, false, std::vector<Coefficients>{Coefficients{}}, forcing),
          exact, unit_square_mesh()};
}

Benchmark square_smooth_hjb_benchmark() {
  ControlGrid grid{{0.0}, {0.0, 1.0}};
  std::vector<Coefficients> coeffs(2);
  coeffs[0].a = Vec2(1.0, 0.5).asDiagonal();
  coeffs[1].a = Vec2(0.5, 1.0).asDiagonal();
  ExactSolution exact = sine_solution();
  const Mat2 a0 = coeffs[0].a, a1 = coeffs[1].a;
  auto forcing = [exact, a0, a1](const Point2& x, std::span<double> f) {
    double u;
    Vec2 g;
    Mat2 h;
    exact.eval(x, u, g, h);
    f[0] = (a0.array() * h.array()).sum() + std::max(0.0, x.x() - 0.5);
    f[1] = (a1.array() * h.array()).sum() + std::max(0.0, 0.5 - x.x());
  };
  return {"square-smooth-hjb", std::make_shared<ConstantOperatorProblem>(grid, 0.0, false, std::move(coeffs), forcing),
          exact, unit_square_mesh()};
}

Benchmark make_benchmark(const std::string& name, const PentagonOptions& options) {
  if (name == "pentagon" || name == "pentagon-isaacs") return pentagon_benchmark(options);
  if (name == "square-laplace") return square_laplace_benchmark();
  if (name == "square-smooth-hjb") return square_smooth_hjb_benchmark();
  throw Error(ErrorCode::InvalidArgument, "unknown experiment '" + name + "'");
}

double finite_difference_check(const ExactSolution& u, const std::vector<Point2>& points, double step) {
  double worst = 0.0;
  for (const Point2& x : points) {
    double v;
    Vec2 g;
    Mat2 h;
    u.eval(x, v, g, h);
    const double scale_g = std::max(g.norm(), 1e-8), scale_h = std::max(h.norm(), 1e-8);
    for (int d = 0; d < 2; ++d) {
      Point2 xp = x, xm = x;
      xp[d] += step;
      xm[d] -= step;
      double vp, vm;
      Vec2 gp, gm;
      Mat2 hp, hm;
      u.eval(xp, vp, gp, hp);
      u.eval(xm, vm, gm, hm);
      worst = std::max(worst, std::abs((vp - vm) / (2 * step) - g[d]) / scale_g);
      worst = std::max(worst, ((gp - gm) / (2 * step) - h.col(d)).norm() / scale_h);
    }
  }
  return worst;
}

}  // namespace isaacs
