// SPDX-License-Identifier: Apache-2.0
#include "edgefem/edgefem.h"

#include "edgefem/experiment.hpp"
#include "edgefem/io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>

using namespace edgefem;

struct efem_element {
  std::shared_ptr<const ReferenceElement> element;
};

struct efem_mesh {
  Mesh mesh;
};

struct efem_result {
  ExperimentConfig config;
  int dim = 2;
  std::vector<ConvergenceRecord> records;
  std::optional<Mesh> last_mesh;
  std::vector<double> last_cell_l2_sq;
};

namespace {

thread_local std::string last_error;

efem_status fail(efem_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
efem_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return EFEM_OK;
  } catch (const ConstructionError& e) {
    return fail(EFEM_ERR_CONSTRUCTION, e.what());
  } catch (const ConvergenceError& e) {
    return fail(EFEM_ERR_CONVERGENCE, e.what());
  } catch (const IoError& e) {
    return fail(EFEM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EFEM_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(EFEM_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(EFEM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EFEM_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

std::ofstream open_out(const char* path) {
  require(path != nullptr, "path is null");
  std::ofstream out(path);
  if (!out) throw IoError(std::string("cannot open ") + path + " for writing");
  return out;
}

efem_record to_c(const ConvergenceRecord& r) {
  return {r.step, r.h, r.n_dofs, r.n_cells, r.l2_error, r.curl_error, r.hcurl_error, r.iterations, r.residual};
}

ExperimentConfig from_c(const efem_config& c) {
  ExperimentConfig x;
  require(c.problem != nullptr && c.cell != nullptr, "config problem and cell must be set");
  x.problem = c.problem;
  x.lshaped_n = c.lshaped_n;
  const std::string cell = c.cell;
  require(cell == "hex" || cell == "tet", "cell must be 'hex' or 'tet'");
  x.family = cell == "hex" ? Family::cube : Family::simplex;
  x.order = c.order;
  x.steps = c.steps;
  x.adaptive = c.adaptive != 0;
  x.mark_fraction = c.mark_fraction;
  x.tol = c.tol;
  x.max_iterations = c.max_iterations;
  x.initial_divisions = c.initial_divisions;
  x.solver = parse_solver(c.solver ? c.solver : "auto");
  x.seed = c.seed;
  if (c.matrix_dump) x.matrix_dump = c.matrix_dump;
  x.validate();
  return x;
}

void write_mesh_as(const Mesh& mesh, const char* path, const char* format,
                   const std::map<std::string, std::vector<double>>& data) {
  require(format != nullptr, "format is null");
  const std::string f = format;
  require(f == "mesh" || f == "vtk", "format must be 'mesh' or 'vtk'");
  auto out = open_out(path);
  if (f == "mesh")
    write_mesh(out, mesh);
  else
    write_vtk(out, mesh, data);
  if (!out) throw IoError(std::string("write to ") + path + " failed");
}

}  // namespace

extern "C" {

const char* efem_version(void) { return "1.0.0"; }
const char* efem_last_error(void) { return last_error.c_str(); }

const char* efem_status_name(efem_status status) {
  switch (status) {
    case EFEM_OK: return "ok";
    case EFEM_ERR_ARGUMENT: return "argument error";
    case EFEM_ERR_CONSTRUCTION: return "construction error";
    case EFEM_ERR_CONVERGENCE: return "convergence error";
    case EFEM_ERR_IO: return "io error";
    case EFEM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

efem_status efem_element_create(const char* kind, int order, efem_element** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "null argument");
    *out = new efem_element{get_element(parse_cell_kind(kind), order)};
  });
}

void efem_element_destroy(efem_element* element) { delete element; }

int efem_element_num_dofs(const efem_element* element) {
  return element ? element->element->num_dofs() : -1;
}

int efem_element_dim(const efem_element* element) { return element ? element->element->kind().dim : -1; }

efem_status efem_element_eval(const efem_element* element, const double point[3], double* values,
                              double* curls) {
  return guarded([&] {
    require(element && point && values, "null argument");
    const ShapeValues s = element->element->eval_shapes(Vec3(point[0], point[1], point[2]));
    for (Eigen::Index i = 0; i < s.values.rows(); ++i)
      for (int a = 0; a < 3; ++a) {
        values[3 * i + a] = s.values(i, a);
        if (curls) curls[3 * i + a] = s.curls(i, a);
      }
  });
}

efem_status efem_element_moment_matrix(const efem_element* element, double* out) {
  return guarded([&] {
    require(element && out, "null argument");
    const Matrix& C = element->element->moment_matrix();
    for (Eigen::Index i = 0; i < C.rows(); ++i)
      for (Eigen::Index j = 0; j < C.cols(); ++j) out[i * C.cols() + j] = C(i, j);
  });
}

efem_status efem_element_write_csv(const efem_element* element, const char* path, int samples) {
  return guarded([&] {
    require(element != nullptr, "null element");
    auto out = open_out(path);
    write_element_csv(out, *element->element, samples);
  });
}

efem_status efem_mesh_unit(const char* kind, int n, efem_mesh** out) {
  return guarded([&] {
    require(kind && out, "null argument");
    require(n >= 1, "n must be >= 1");
    const CellKind k = parse_cell_kind(kind);
    Mesh hex = structured_hex_mesh(k.dim, {n, n, k.dim == 3 ? n : 1}, Vec3::Zero(),
                                   k.dim == 3 ? Vec3::Ones() : Vec3(1, 1, 0));
    *out = new efem_mesh{k.family == Family::cube ? std::move(hex) : tetrahedralize(hex)};
  });
}

efem_status efem_mesh_read(const char* path, efem_mesh** out) {
  return guarded([&] {
    require(path && out, "null argument");
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    *out = new efem_mesh{read_mesh(in)};
  });
}

void efem_mesh_destroy(efem_mesh* mesh) { delete mesh; }
size_t efem_mesh_num_cells(const efem_mesh* mesh) { return mesh ? mesh->mesh.num_cells() : 0; }
size_t efem_mesh_num_vertices(const efem_mesh* mesh) { return mesh ? mesh->mesh.num_vertices() : 0; }

efem_status efem_mesh_write(const efem_mesh* mesh, const char* path, const char* format) {
  return guarded([&] {
    require(mesh != nullptr, "null mesh");
    write_mesh_as(mesh->mesh, path, format, {});
  });
}

void efem_config_default(efem_config* c) {
  if (!c) return;
  const ExperimentConfig d;
  c->problem = "unit2d";
  c->lshaped_n = d.lshaped_n;
  c->cell = "hex";
  c->order = d.order;
  c->steps = d.steps;
  c->adaptive = 0;
  c->mark_fraction = d.mark_fraction;
  c->tol = d.tol;
  c->max_iterations = d.max_iterations;
  c->initial_divisions = d.initial_divisions;
  c->solver = "auto";
  c->seed = d.seed;
  c->matrix_dump = nullptr;
}

efem_status efem_expected_slope(const efem_config* config, double* out) {
  return guarded([&] {
    require(config && out, "null argument");
    *out = expected_slope(from_c(*config));
  });
}

efem_status efem_experiment_run(const efem_config* config, efem_step_fn on_step, void* user,
                                efem_result** out) {
  if (!out) return fail(EFEM_ERR_ARGUMENT, "null result pointer");
  *out = nullptr;
  auto result = std::make_unique<efem_result>();
  const efem_status st = guarded([&] {
    require(config != nullptr, "null config");
    result->config = from_c(*config);
    result->dim = (result->config.problem == "unit2d" || result->config.problem == "lshaped") ? 2 : 3;
    try {
      result->records = run_experiment(
          result->config,
          [&](const ConvergenceRecord& r) {
            if (on_step) {
              const efem_record c = to_c(r);
              on_step(&c, user);
            }
          },
          [&](int, const Mesh& mesh, const std::vector<double>& err) {
            result->last_mesh = mesh;
            result->last_cell_l2_sq = err;
          });
    } catch (const ExperimentFailure& e) {
      result->records = e.records;
      throw ConvergenceError(e.what(), {});
    }
  });
  if (st == EFEM_OK || st == EFEM_ERR_CONVERGENCE) *out = result.release();
  return st;
}

void efem_result_destroy(efem_result* result) { delete result; }

size_t efem_result_num_records(const efem_result* result) { return result ? result->records.size() : 0; }

efem_status efem_result_record(const efem_result* result, size_t index, efem_record* out) {
  return guarded([&] {
    require(result && out, "null argument");
    *out = to_c(result->records.at(index));
  });
}

efem_status efem_result_slopes(const efem_result* result, efem_slopes* out) {
  return guarded([&] {
    require(result && out, "null argument");
    const Slopes s = compute_slopes(result->records, result->config.adaptive, result->dim);
    *out = {s.l2_last, s.hcurl_last, s.l2_fit, s.hcurl_fit};
  });
}

efem_status efem_result_write_csv(const efem_result* result, const char* path) {
  return guarded([&] {
    require(result != nullptr, "null result");
    auto out = open_out(path);
    write_csv(out, result->records);
  });
}

efem_status efem_result_write_slopes(const efem_result* result, const char* path) {
  return guarded([&] {
    require(result != nullptr, "null result");
    auto out = open_out(path);
    write_slopes(out, compute_slopes(result->records, result->config.adaptive, result->dim));
  });
}

efem_status efem_result_write_plot(const efem_result* result, const char* path, const char* csv_name) {
  return guarded([&] {
    require(result && csv_name, "null argument");
    auto out = open_out(path);
    write_plot_script(out, csv_name, result->config.adaptive);
  });
}

efem_status efem_result_write_mesh(const efem_result* result, const char* path, const char* format) {
  return guarded([&] {
    require(result != nullptr, "null result");
    if (!result->last_mesh) throw std::invalid_argument("result has no completed step");
    std::vector<double> err = result->last_cell_l2_sq;
    for (double& e : err) e = std::sqrt(e);
    write_mesh_as(*result->last_mesh, path, format, {{"l2_error", err}});
  });
}

efem_status efem_compare_curves(const efem_result* adaptive, const efem_result* uniform, int min_dofs,
                                int metric, int* violations) {
  return guarded([&] {
    require(adaptive && uniform && violations, "null argument");
    require(metric == 0 || metric == 1, "metric must be 0 (H(curl)) or 1 (L2)");
    const auto field = metric == 0 ? &ConvergenceRecord::hcurl_error : &ConvergenceRecord::l2_error;
    *violations = static_cast<int>(adaptive_violations(adaptive->records, uniform->records, min_dofs, field).size());
  });
}

}  // extern "C"
