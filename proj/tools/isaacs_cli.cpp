// Copyright 2026 The isaacs-dg Authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark driver: runs an adaptive or uniform study and writes one CSV row per step.

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "isaacs/isaacs.h"

namespace {

struct Settings {
  std::string experiment = "pentagon";
  std::string mode = "adaptive";
  std::string out;
  std::string export_mesh;
  std::string export_eta;
  std::string export_trace;
  bool quiet = false;
};

void print_step(const isaacs_step_record* r, void*) {
  std::fprintf(stderr, "step %3d  ndofs %7d  error %.4e  eta %.4e  eff %.3f  solves %d  residual %.1e\n", r->step,
               r->ndofs, r->error, r->eta, r->effectivity, r->newton_iters, r->final_residual);
}

}  // namespace

int main(int argc, char** argv) {
  isaacs_run_config cfg;
  isaacs_run_config_init(&cfg);
  Settings set;
  std::string config_path;

  CLI::App app{"Adaptive DG / C0-IP solver for HJB and Isaacs benchmarks"};
  app.add_option("--config", config_path, "flat JSON file; keys are the flag names")->check(CLI::ExistingFile);

  // name -> (option, assignment from JSON)
  std::map<std::string, std::pair<CLI::Option*, std::function<void(const nlohmann::json&)>>> fields;
  auto bind = [&](const std::string& name, auto& target, const std::string& help) {
    CLI::Option* opt = app.add_option("--" + name, target, help)->capture_default_str();
    fields[name] = {opt, [&target](const nlohmann::json& j) { j.get_to(target); }};
  };
  bind("experiment", set.experiment, "pentagon | pentagon-isaacs | square-laplace | square-smooth-hjb");
  bind("mode", set.mode, "adaptive | uniform");
  bind("s", cfg.s, "0: discontinuous, 1: continuous");
  bind("p", cfg.p, "polynomial degree");
  bind("q", cfg.q, "lifting degree (negative: p-2)");
  bind("theta", cfg.theta, "stabilization weight");
  bind("chi", cfg.chi, "lift boundary jumps of the value");
  bind("sigma", cfg.sigma, "gradient jump penalty (negative: 10 p^2)");
  bind("rho", cfg.rho, "value jump penalty (negative: 10 p^4)");
  bind("n-alpha", cfg.n_alpha, "alpha grid size");
  bind("n-beta", cfg.n_beta, "beta grid size");
  bind("phi", cfg.phi, "pentagon angle");
  bind("alpha-max", cfg.alpha_max, "largest alpha");
  bind("bulk", cfg.bulk, "Dorfler bulk parameter");
  bind("max-dofs", cfg.max_dofs, "stop once this many dofs are reached");
  bind("max-steps", cfg.max_steps, "adaptive step limit");
  bind("levels", cfg.levels, "uniform refinement levels");
  bind("tol", cfg.tol, "scaled residual tolerance");
  bind("max-outer", cfg.max_outer, "outer iterations");
  bind("max-inner", cfg.max_inner, "inner iterations per outer");
  bind("out", set.out, "step CSV");
  bind("export-mesh", set.export_mesh, "final mesh");
  bind("export-eta", set.export_eta, "per-element estimator CSV");
  bind("export-trace", set.export_trace, "solver trace of the last step");
  app.add_flag("--quiet", set.quiet, "no progress output");

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) {
    nlohmann::json j;
    try {
      std::ifstream in(config_path);
      in >> j;
      if (!j.is_object()) throw std::runtime_error("top level must be an object");
      for (const auto& [key, value] : j.items()) {
        std::string name = key;
        for (char& ch : name)
          if (ch == '_') ch = '-';
        auto it = fields.find(name);
        if (it == fields.end()) throw std::runtime_error("unknown key '" + key + "'");
        if (it->second.first->count() == 0) it->second.second(value);
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s: %s\n", config_path.c_str(), e.what());
      return 2;
    }
  }

  cfg.experiment = set.experiment.c_str();
  cfg.mode = set.mode.c_str();
  cfg.out = set.out.c_str();
  cfg.export_mesh = set.export_mesh.c_str();
  cfg.export_eta = set.export_eta.c_str();
  cfg.export_trace = set.export_trace.c_str();
  if (!set.quiet) cfg.on_step = print_step;

  isaacs_run_result* result = nullptr;
  const isaacs_status st = isaacs_run(&cfg, &result);
  if (st != ISAACS_OK) {
    std::fprintf(stderr, "error (%s): %s\n", isaacs_status_string(st), isaacs_last_error());
    isaacs_result_destroy(result);
    return 1;
  }
  if (!set.quiet && isaacs_result_num_steps(result) >= 2)
    std::fprintf(stderr, "slope over the last 5 steps: %.4f\n", isaacs_result_slope(result, 5));
  isaacs_result_destroy(result);
  return 0;
}
