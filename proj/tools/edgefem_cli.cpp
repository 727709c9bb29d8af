// SPDX-License-Identifier: Apache-2.0
// Command-line driver over the C API.
#include "edgefem/edgefem.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kSolver = 3, kError = 4 };

struct Options {
  std::string problem = "unit2d";
  int lshaped_n = 1;
  std::string cell = "hex";
  int order = 1;
  int steps = 4;
  double mark_fraction = 0.05;
  double tol = 1e-10;
  int max_iterations = 100000;
  int divisions = 0;
  std::string solver = "auto";
  std::uint64_t seed = 0;
  std::string out = "edgefem_out";
  bool assert_slopes = false;
  double slope_tol = 0.15;
  bool compare_uniform = false;
  int uniform_steps = 5;
  int min_dofs = 1000;
  bool dump_matrix = false;
  int samples = 11;
  bool adaptive_mesh = false;
};

int report(efem_status st, const char* what) {
  std::fprintf(stderr, "edgefem: %s: %s (%s)\n", what, efem_last_error(), efem_status_name(st));
  if (st == EFEM_ERR_ARGUMENT) return kUsage;
  if (st == EFEM_ERR_CONVERGENCE) return kSolver;
  return kError;
}

std::string in_dir(const Options& o, const std::string& name) {
  return (std::filesystem::path(o.out) / name).string();
}

efem_config make_config(const Options& o, bool adaptive) {
  efem_config c;
  efem_config_default(&c);
  c.problem = o.problem.c_str();
  c.lshaped_n = o.lshaped_n;
  c.cell = o.cell.c_str();
  c.order = o.order;
  c.steps = o.steps;
  c.adaptive = adaptive ? 1 : 0;
  c.mark_fraction = o.mark_fraction;
  c.tol = o.tol;
  c.max_iterations = o.max_iterations;
  c.initial_divisions = o.divisions;
  c.solver = o.solver.c_str();
  c.seed = o.seed;
  return c;
}

void print_record(const efem_record* r, void*) {
  std::printf("step %2d  h %.4e  dofs %8d  cells %7d  L2 %.6e  Hcurl %.6e  iters %d\n", r->step, r->h,
              r->n_dofs, r->n_cells, r->l2_error, r->hcurl_error, r->iterations);
  std::fflush(stdout);
}

// Writes CSV, slopes, plot script and final mesh of a run under prefix.
efem_status write_outputs(const Options& o, const efem_result* res, const std::string& prefix) {
  const std::string csv = prefix + ".csv";
  efem_status st = efem_result_write_csv(res, in_dir(o, csv).c_str());
  if (st == EFEM_OK) st = efem_result_write_slopes(res, in_dir(o, prefix + "_slopes.txt").c_str());
  if (st == EFEM_OK) st = efem_result_write_plot(res, in_dir(o, prefix + ".gp").c_str(), csv.c_str());
  if (st == EFEM_OK && efem_result_num_records(res) > 0)
    st = efem_result_write_mesh(res, in_dir(o, prefix + "_mesh.vtk").c_str(), "vtk");
  return st;
}

int run(const Options& o, bool adaptive) {
  std::filesystem::create_directories(o.out);
  efem_config cfg = make_config(o, adaptive);
  const std::string dump = in_dir(o, "system");
  if (o.dump_matrix) cfg.matrix_dump = dump.c_str();
  efem_result* res = nullptr;
  const efem_status st = efem_experiment_run(&cfg, print_record, nullptr, &res);
  const char* name = adaptive ? "adaptive" : "uniform";
  const std::string failure = efem_last_error();
  if (res) {
    const efem_status wst = write_outputs(o, res, name);
    if (wst != EFEM_OK) {
      efem_result_destroy(res);
      return report(wst, "writing results");
    }
  }
  if (st != EFEM_OK) {
    efem_result_destroy(res);
    std::fprintf(stderr, "edgefem: experiment failed: %s (%s)\n", failure.c_str(), efem_status_name(st));
    return st == EFEM_ERR_ARGUMENT ? kUsage : st == EFEM_ERR_CONVERGENCE ? kSolver : kError;
  }
  efem_slopes s{};
  efem_result_slopes(res, &s);
  std::printf("slopes (last two points): L2 %.4f  Hcurl %.4f\n", s.l2_last, s.hcurl_last);
  std::printf("slopes (all points):      L2 %.4f  Hcurl %.4f\n", s.l2_fit, s.hcurl_fit);
  int code = kOk;

  if (!adaptive && o.assert_slopes) {
    double expected = 0.0;
    efem_expected_slope(&cfg, &expected);
    const bool ok = std::abs(s.l2_last - expected) <= o.slope_tol &&
                    std::abs(s.hcurl_last - expected) <= o.slope_tol;
    std::printf("slope check: expected %.4f +- %.2f -> %s\n", expected, o.slope_tol, ok ? "PASS" : "FAIL");
    if (!ok) code = kCheckFailed;
  }
  if (adaptive && o.compare_uniform) {
    efem_config ucfg = make_config(o, false);
    ucfg.steps = o.uniform_steps;
    efem_result* uni = nullptr;
    std::printf("uniform reference run:\n");
    const efem_status ust = efem_experiment_run(&ucfg, print_record, nullptr, &uni);
    if (ust != EFEM_OK) {
      efem_result_destroy(uni);
      efem_result_destroy(res);
      return report(ust, "uniform reference run failed");
    }
    write_outputs(o, uni, "uniform");
    int bad_hcurl = 0, bad_l2 = 0;
    efem_compare_curves(res, uni, o.min_dofs, 0, &bad_hcurl);
    efem_compare_curves(res, uni, o.min_dofs, 1, &bad_l2);
    const bool ok = bad_hcurl == 0 && bad_l2 == 0;
    std::printf("adaptive below uniform beyond %d DOFs: %s (%d H(curl), %d L2 violations)\n", o.min_dofs,
                ok ? "PASS" : "FAIL", bad_hcurl, bad_l2);
    if (!ok && o.assert_slopes) code = kCheckFailed;
    efem_result_destroy(uni);
  }
  efem_result_destroy(res);
  return code;
}

int dump_element(const Options& o) {
  std::filesystem::create_directories(o.out);
  const std::string kind = o.cell == "hex" ? (o.problem == "unit3d" || o.problem == "fichera" ? "cube3" : "cube2")
                         : o.cell == "tet" ? (o.problem == "unit3d" || o.problem == "fichera" ? "simplex3" : "simplex2")
                                           : o.cell;
  efem_element* e = nullptr;
  efem_status st = efem_element_create(kind.c_str(), o.order, &e);
  if (st != EFEM_OK) return report(st, "element construction failed");
  const std::string path = in_dir(o, "element_" + kind + "_k" + std::to_string(o.order) + ".csv");
  st = efem_element_write_csv(e, path.c_str(), o.samples);
  std::printf("%s order %d: %d shape functions -> %s\n", kind.c_str(), o.order, efem_element_num_dofs(e),
              path.c_str());
  efem_element_destroy(e);
  return st == EFEM_OK ? kOk : report(st, "writing element");
}

int dump_mesh(const Options& o) {
  std::filesystem::create_directories(o.out);
  efem_config cfg = make_config(o, o.adaptive_mesh);
  efem_result* res = nullptr;
  efem_status st = efem_experiment_run(&cfg, print_record, nullptr, &res);
  if (st != EFEM_OK) {
    efem_result_destroy(res);
    return report(st, "mesh generation failed");
  }
  st = efem_result_write_mesh(res, in_dir(o, "mesh.txt").c_str(), "mesh");
  if (st == EFEM_OK) st = efem_result_write_mesh(res, in_dir(o, "mesh.vtk").c_str(), "vtk");
  efem_result_destroy(res);
  return st == EFEM_OK ? kOk : report(st, "writing mesh");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge finite element convergence and adaptivity experiments"};
  app.set_config("--config", "", "key=value file mirroring the long flags");
  app.require_subcommand(1);
  Options o;
  app.add_option("--problem", o.problem, "unit2d, unit3d, lshaped or fichera")
      ->check(CLI::IsMember({"unit2d", "unit3d", "lshaped", "fichera"}));
  app.add_option("--lshaped-n", o.lshaped_n, "exponent n of the L-shaped solution")->check(CLI::PositiveNumber);
  app.add_option("--cell", o.cell, "hex or tet (dump-element also takes cube2/cube3/simplex2/simplex3)");
  app.add_option("--order,-k", o.order, "element order k")->check(CLI::PositiveNumber);
  app.add_option("--steps", o.steps, "refinement steps")->check(CLI::PositiveNumber);
  app.add_option("--mark-fraction", o.mark_fraction, "fraction of cells refined per adaptive step");
  app.add_option("--tol", o.tol, "relative residual of the CG solver");
  app.add_option("--max-iterations", o.max_iterations, "CG iteration limit");
  app.add_option("--divisions", o.divisions, "root cells per axis (0: problem default)");
  app.add_option("--solver", o.solver, "auto, cg or direct")->check(CLI::IsMember({"auto", "cg", "direct"}));
  app.add_option("--seed", o.seed, "seed recorded with the run");
  app.add_option("--out", o.out, "output directory");
  app.add_flag("--assert-slopes", o.assert_slopes, "exit nonzero unless the rate checks pass");
  app.add_option("--slope-tol", o.slope_tol, "allowed deviation from the predicted rate");
  app.add_flag("--compare-uniform", o.compare_uniform, "adapt: also run uniform refinement and compare");
  app.add_option("--uniform-steps", o.uniform_steps, "steps of the uniform reference run");
  app.add_option("--min-dofs", o.min_dofs, "comparison only above this DOF count");
  app.add_flag("--dump-matrix", o.dump_matrix, "write the last system in Matrix Market format");
  app.add_option("--samples", o.samples, "dump-element: lattice points per axis");
  app.add_flag("--adaptive", o.adaptive_mesh, "dump-mesh: refine adaptively");
  app.fallthrough();

  auto* converge = app.add_subcommand("converge", "uniform refinement study");
  auto* adapt = app.add_subcommand("adapt", "adaptive refinement study (hex only)");
  auto* element = app.add_subcommand("dump-element", "sample reference shape functions to CSV");
  auto* mesh = app.add_subcommand("dump-mesh", "write the mesh reached after --steps");
  for (auto* sub : {converge, adapt, element, mesh}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (converge->parsed()) return run(o, false);
    if (adapt->parsed()) return run(o, true);
    if (element->parsed()) return dump_element(o);
    return dump_mesh(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "edgefem: %s\n", e.what());
    return kError;
  }
}
