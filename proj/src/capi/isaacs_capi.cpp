// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

#include "isaacs/isaacs.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/adapt.hpp"
#include "core/benchmarks.hpp"
#include "core/mesh.hpp"

struct isaacs_mesh {
  isaacs::Mesh mesh;
};

struct isaacs_run_result {
  std::vector<isaacs_step_record> steps;
  std::shared_ptr<const isaacs::Mesh> mesh;
};

namespace {

thread_local std::string g_last_error;

isaacs_status fail(isaacs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

isaacs_status map_code(isaacs::ErrorCode code) {
  switch (code) {
    case isaacs::ErrorCode::InvalidArgument: return ISAACS_ERR_INVALID_ARGUMENT;
    case isaacs::ErrorCode::NonConforming: return ISAACS_ERR_NON_CONFORMING;
    case isaacs::ErrorCode::DegenerateElement: return ISAACS_ERR_DEGENERATE_ELEMENT;
    case isaacs::ErrorCode::Io: return ISAACS_ERR_IO;
    case isaacs::ErrorCode::SingularMatrix: return ISAACS_ERR_SINGULAR_MATRIX;
    case isaacs::ErrorCode::NotConverged: return ISAACS_ERR_NOT_CONVERGED;
  }
  return ISAACS_ERR_INTERNAL;
}

template <class F>
isaacs_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ISAACS_OK;
  } catch (const isaacs::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ISAACS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ISAACS_ERR_INTERNAL, e.what());
  }
}

isaacs_step_record to_c(const isaacs::AdaptiveRecord& r, bool has_exact) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {r.step,          r.ndofs,        has_exact ? r.error : nan,
          r.eta,           has_exact ? r.effectivity : nan,
          r.newton_iters,  r.h_max,        r.nelements,
          r.outer_iters,   r.final_residual, r.last_ratio,
          has_exact ? r.local_efficiency : nan};
}

class CsvFile {
 public:
  explicit CsvFile(const char* path) {
    if (!path || !*path) return;
    file_ = std::fopen(path, "w");
    if (!file_) throw isaacs::Error(isaacs::ErrorCode::Io, std::string("cannot open ") + path + " for writing");
  }
  ~CsvFile() {
    if (file_) std::fclose(file_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  template <class... Args>
  void line(const char* fmt, Args... args) {
    if (!file_) return;
    if constexpr (sizeof...(Args) == 0)
      std::fputs(fmt, file_);
    else
      std::fprintf(file_, fmt, args...);
    std::fflush(file_);
  }

 private:
  std::FILE* file_ = nullptr;
};

void write_eta(const char* path, const isaacs::EstimatorReport& report) {
  CsvFile f(path);
  f.line("element,eta_K,error_K\n");
  for (int k = 0; k < report.eta_K.size(); ++k)
    f.line("%d,%.12e,%.12e\n", k, report.eta_K[k],
           report.error_K.size() ? report.error_K[k] : std::numeric_limits<double>::quiet_NaN());
}

void write_trace(const char* path, const isaacs::SolveTrace& trace) {
  CsvFile f(path);
  f.line("iteration,residual,policy_changes\n");
  for (std::size_t i = 0; i < trace.entries.size(); ++i)
    f.line("%zu,%.12e,%d\n", i, trace.entries[i].residual, trace.entries[i].policy_changes);
}

}  // namespace

extern "C" {

const char* isaacs_version(void) { return "1.0.0"; }

const char* isaacs_last_error(void) { return g_last_error.c_str(); }

const char* isaacs_status_string(isaacs_status status) {
  switch (status) {
    case ISAACS_OK: return "ok";
    case ISAACS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ISAACS_ERR_NON_CONFORMING: return "non-conforming mesh";
    case ISAACS_ERR_DEGENERATE_ELEMENT: return "degenerate element";
    case ISAACS_ERR_IO: return "i/o error";
    case ISAACS_ERR_SINGULAR_MATRIX: return "singular matrix";
    case ISAACS_ERR_NOT_CONVERGED: return "not converged";
    case ISAACS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

isaacs_status isaacs_mesh_create(const double* xy, int num_vertices, const int* triangles, int num_elements,
                                 isaacs_mesh** out) {
  if (!out || !xy || !triangles || num_vertices < 3 || num_elements < 1)
    return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_create: null pointer or empty mesh");
  return guarded([&] {
    std::vector<isaacs::Point2> v(num_vertices);
    for (int i = 0; i < num_vertices; ++i) v[i] = isaacs::Point2(xy[2 * i], xy[2 * i + 1]);
    std::vector<isaacs::Mesh::Triangle> t(num_elements);
    for (int k = 0; k < num_elements; ++k) {
      for (int j = 0; j < 3; ++j) {
        const int idx = triangles[3 * k + j];
        isaacs::require(idx >= 0 && idx < num_vertices, "isaacs_mesh_create: vertex index out of range");
        t[k][j] = idx;
      }
    }
    *out = new isaacs_mesh{isaacs::Mesh::build(std::move(v), std::move(t))};
  });
}

isaacs_status isaacs_mesh_read(const char* path, isaacs_mesh** out) {
  if (!path || !out) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_read: null pointer");
  return guarded([&] { *out = new isaacs_mesh{isaacs::read_mesh_file(path)}; });
}

isaacs_status isaacs_mesh_write(const isaacs_mesh* mesh, const char* path) {
  if (!mesh || !path) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_write: null pointer");
  return guarded([&] { isaacs::write_mesh_file(mesh->mesh, path); });
}

isaacs_status isaacs_mesh_refine(const isaacs_mesh* mesh, const int* marked, int num_marked, isaacs_mesh** out) {
  if (!mesh || !out || num_marked < 0 || (num_marked > 0 && !marked))
    return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_refine: invalid arguments");
  return guarded([&] {
    *out = new isaacs_mesh{mesh->mesh.refine(std::span<const int>(marked, static_cast<std::size_t>(num_marked)))};
  });
}

isaacs_status isaacs_mesh_refine_uniform(const isaacs_mesh* mesh, isaacs_mesh** out) {
  if (!mesh || !out) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_refine_uniform: null pointer");
  return guarded([&] { *out = new isaacs_mesh{mesh->mesh.refine_uniform()}; });
}

int isaacs_mesh_num_vertices(const isaacs_mesh* mesh) { return mesh ? mesh->mesh.num_vertices() : -1; }
int isaacs_mesh_num_elements(const isaacs_mesh* mesh) { return mesh ? mesh->mesh.num_elements() : -1; }
int isaacs_mesh_num_faces(const isaacs_mesh* mesh) { return mesh ? mesh->mesh.num_faces() : -1; }

isaacs_status isaacs_mesh_get_vertices(const isaacs_mesh* mesh, double* xy) {
  if (!mesh || !xy) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_get_vertices: null pointer");
  const auto& v = mesh->mesh.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    xy[2 * i] = v[i].x();
    xy[2 * i + 1] = v[i].y();
  }
  return ISAACS_OK;
}

isaacs_status isaacs_mesh_get_elements(const isaacs_mesh* mesh, int* triangles) {
  if (!mesh || !triangles) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_mesh_get_elements: null pointer");
  const auto& t = mesh->mesh.elements();
  for (std::size_t k = 0; k < t.size(); ++k)
    for (int j = 0; j < 3; ++j) triangles[3 * k + j] = t[k][j];
  return ISAACS_OK;
}

void isaacs_mesh_destroy(isaacs_mesh* mesh) { delete mesh; }

void isaacs_run_config_init(isaacs_run_config* c) {
  if (!c) return;
  const isaacs::PentagonOptions pentagon;
  const isaacs::SolverConfig solver;
  *c = isaacs_run_config{};
  c->experiment = "pentagon";
  c->mode = "adaptive";
  c->s = 0;
  c->p = 2;
  c->q = -1;
  c->theta = 0.5;
  c->chi = 0;
  c->sigma = -1.0;
  c->rho = -1.0;
  c->n_alpha = pentagon.n_alpha;
  c->n_beta = pentagon.n_beta;
  c->phi = pentagon.phi;
  c->alpha_max = pentagon.alpha_max;
  c->bulk = 0.25;
  c->max_dofs = 50000;
  c->max_steps = 200;
  c->levels = 5;
  c->tol = solver.tol;
  c->max_outer = solver.max_outer;
  c->max_inner = solver.max_inner;
}

isaacs_status isaacs_run(const isaacs_run_config* c, isaacs_run_result** out) {
  if (!c || !out || !c->experiment || !c->mode)
    return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_run: null configuration");
  *out = nullptr;
  const std::string mode = c->mode;
  if (mode != "adaptive" && mode != "uniform")
    return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_run: mode must be 'adaptive' or 'uniform'");

  auto result = std::make_unique<isaacs_run_result>();
  bool failed = false;
  std::string failure;
  const isaacs_status st = guarded([&] {
    isaacs::PentagonOptions po;
    po.phi = c->phi;
    po.alpha_max = c->alpha_max;
    po.n_alpha = c->n_alpha;
    po.n_beta = c->n_beta;
    const isaacs::Benchmark bench = isaacs::make_benchmark(c->experiment, po);
    if (bench.exact.eval) {
      std::vector<isaacs::Point2> pts;
      for (int k = 0; k < bench.initial_mesh.num_elements(); ++k) pts.push_back(bench.initial_mesh.centroid(k));
      const double mismatch = isaacs::finite_difference_check(bench.exact, pts);
      if (mismatch > 1e-4)
        throw std::runtime_error("exact solution derivatives fail the finite-difference check (" +
                                 std::to_string(mismatch) + ")");
    }

    isaacs::AdaptiveConfig ac;
    ac.method.s = c->s;
    ac.method.p = c->p;
    ac.method.q = c->q;
    ac.method.theta = c->theta;
    ac.method.chi = c->chi;
    ac.method.sigma = c->sigma;
    ac.method.rho = c->rho;
    ac.method.lambda = bench.problem->lambda();
    ac.solver.tol = c->tol;
    ac.solver.max_outer = c->max_outer;
    ac.solver.max_inner = c->max_inner;
    ac.bulk = c->bulk;
    ac.max_dofs = c->max_dofs;
    ac.max_steps = c->max_steps;
    ac.uniform = mode == "uniform";
    ac.levels = c->levels;
    ac.method.resolved();

    CsvFile csv(c->out);
    csv.line("step,ndofs,error_T,eta,effectivity,newton_iters,h_max\n");
    const bool has_exact = static_cast<bool>(bench.exact.eval);
    auto on_step = [&](const isaacs::AdaptiveRecord& r, const isaacs::AdaptiveResult&) {
      const isaacs_step_record rec = to_c(r, has_exact);
      result->steps.push_back(rec);
      csv.line("%d,%d,%.12e,%.12e,%.12e,%d,%.12e\n", rec.step, rec.ndofs, rec.error, rec.eta, rec.effectivity,
               rec.newton_iters, rec.h_max);
      if (c->on_step) c->on_step(&rec, c->user_data);
    };
    const isaacs::AdaptiveResult res =
        isaacs::adaptive_loop(bench.problem, has_exact ? &bench.exact : nullptr, bench.initial_mesh, ac, on_step);
    result->mesh = res.mesh;
    if (c->export_mesh && *c->export_mesh && res.mesh) isaacs::write_mesh_file(*res.mesh, c->export_mesh);
    if (c->export_eta && *c->export_eta && !res.records.empty()) write_eta(c->export_eta, res.report);
    if (c->export_trace && *c->export_trace) write_trace(c->export_trace, res.last_trace);
    failed = res.failed;
    failure = res.failure;
  });
  if (st != ISAACS_OK && result->steps.empty()) return st;
  *out = result.release();
  if (st != ISAACS_OK) return st;
  if (failed) return fail(ISAACS_ERR_NOT_CONVERGED, failure);
  return ISAACS_OK;
}

int isaacs_result_num_steps(const isaacs_run_result* r) { return r ? static_cast<int>(r->steps.size()) : -1; }

isaacs_status isaacs_result_step(const isaacs_run_result* r, int index, isaacs_step_record* record) {
  if (!r || !record) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_result_step: null pointer");
  if (index < 0 || index >= static_cast<int>(r->steps.size()))
    return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_result_step: index out of range");
  *record = r->steps[index];
  return ISAACS_OK;
}

double isaacs_result_slope(const isaacs_run_result* r, int tail) {
  if (!r || r->steps.size() < 2 || tail < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> n, e;
  for (const auto& s : r->steps) {
    n.push_back(s.ndofs);
    e.push_back(s.error);
  }
  return isaacs::loglog_slope(n, e, tail);
}

isaacs_status isaacs_result_mesh(const isaacs_run_result* r, isaacs_mesh** out) {
  if (!r || !out) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_result_mesh: null pointer");
  if (!r->mesh) return fail(ISAACS_ERR_INVALID_ARGUMENT, "isaacs_result_mesh: no completed step");
  return guarded([&] { *out = new isaacs_mesh{*r->mesh}; });
}

void isaacs_result_destroy(isaacs_run_result* r) { delete r; }

}  // extern "C"
