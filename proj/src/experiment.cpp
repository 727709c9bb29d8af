// SPDX-License-Identifier: Apache-2.0
#include "edgefem/experiment.hpp"

#include "edgefem/amr.hpp"
#include "edgefem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace edgefem {

void ExperimentConfig::validate() const {
  if (problem != "unit2d" && problem != "unit3d" && problem != "lshaped" && problem != "fichera")
    throw std::invalid_argument("unknown problem '" + problem + "'");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (lshaped_n < 1) throw std::invalid_argument("lshaped n must be >= 1");
  if (adaptive && family != Family::cube)
    throw std::invalid_argument("adaptive refinement needs hexahedral cells");
  if (!(mark_fraction > 0.0 && mark_fraction <= 1.0))
    throw std::invalid_argument("mark fraction must lie in (0, 1]");
  if (!(tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
}

SolverKind parse_solver(const std::string& name) {
  if (name == "auto") return SolverKind::automatic;
  if (name == "cg") return SolverKind::cg;
  if (name == "direct") return SolverKind::direct;
  throw std::invalid_argument("unknown solver '" + name + "'");
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::cg: return "cg";
    case SolverKind::direct: return "direct";
    default: return "auto";
  }
}

namespace {

// Leaves sorted by descending error, ties by ascending id; the first
// ceil(fraction * n) are marked.
std::vector<int> mark_cells(const std::vector<double>& err, double fraction) {
  std::vector<int> order(err.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return err[a] > err[b]; });
  const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(err.size()) - 1e-12));
  order.resize(std::min(order.size(), std::max<std::size_t>(count, 1)));
  return order;
}

}  // namespace

std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config, const StepCallback& on_step,
                                              const MeshCallback& on_mesh) {
  config.validate();
  const Problem problem = make_problem(config.problem, config.lshaped_n, config.initial_divisions);
  const Domain& dom = problem.domain;
  const CellKind kind = config.family == Family::cube ? (dom.dim == 2 ? cube2 : cube3)
                                                     : (dom.dim == 2 ? simplex2 : simplex3);
  const int degree = 2 * config.order + 4;
  Forest forest(dom.dim, dom.roots, dom.origin, dom.root_size, dom.keep);
  std::vector<ConvergenceRecord> records;

  for (int step = 0; step < config.steps; ++step) {
    std::shared_ptr<const Space> space;
    if (kind.family == Family::cube) {
      space = make_forest_space(forest, config.order);
    } else {
      auto mesh = std::make_shared<const Mesh>(tetrahedralize(domain_mesh(dom, step)));
      space = make_space(mesh, config.order);
    }
    const Vector g = impose_dirichlet(*space, problem.exact.value);
    const SparseSystem sys = assemble(*space, Coefficients{}, problem.source, g, degree);
    if (!config.matrix_dump.empty() && step + 1 == config.steps) {
      write_matrix_market(sys.matrix, config.matrix_dump + "_matrix.mtx");
      write_matrix_market(sys.rhs, config.matrix_dump + "_rhs.mtx");
    }
    SolveReport rep;
    try {
      // CG for the smooth problems; the singular ones reach errors where a
      // relative residual of tol no longer bounds the solver error.
      const bool smooth = config.problem == "unit2d" || config.problem == "unit3d";
      const bool direct = config.solver == SolverKind::direct ||
                          (config.solver == SolverKind::automatic && (config.adaptive || !smooth));
      rep = direct ? solve_sparse_direct(sys.matrix, sys.rhs)
                   : solve_cg(sys.matrix, sys.rhs, config.tol, config.max_iterations);
    } catch (const ConvergenceError& e) {
      throw ExperimentFailure(std::string("step ") + std::to_string(step) + ": " + e.what(), records);
    }
    const FEFunction uh = finalize(space, rep.x, g);
    const ErrorNorms err = error_norms(uh, problem.exact, degree);

    ConvergenceRecord rec;
    rec.step = step;
    rec.h = space->mesh().max_cell_size();
    rec.n_dofs = space->num_free();
    rec.n_cells = static_cast<int>(space->mesh().num_cells());
    rec.l2_error = err.l2;
    rec.curl_error = err.curl;
    rec.hcurl_error = err.hcurl;
    rec.iterations = rep.iterations;
    rec.residual = rep.relative_residual;
    records.push_back(rec);
    if (on_step) on_step(rec);
    if (on_mesh) on_mesh(step, space->mesh(), err.cell_l2_sq);

    if (step + 1 == config.steps || kind.family != Family::cube) continue;
    if (config.adaptive)
      forest.refine(mark_cells(err.cell_l2_sq, config.mark_fraction));
    else
      forest.refine_all();
  }
  return records;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Slopes compute_slopes(const std::vector<ConvergenceRecord>& records, bool by_dofs, int dim) {
  std::vector<double> lx, l2, hc;
  for (const auto& r : records) {
    lx.push_back(by_dofs ? -std::log(static_cast<double>(r.n_dofs)) / dim : std::log(r.h));
    l2.push_back(std::log(r.l2_error));
    hc.push_back(std::log(r.hcurl_error));
  }
  const auto tail = [](const std::vector<double>& v) {
    return v.size() < 2 ? v : std::vector<double>(v.end() - 2, v.end());
  };
  Slopes s;
  s.l2_last = fit_slope(tail(lx), tail(l2));
  s.hcurl_last = fit_slope(tail(lx), tail(hc));
  s.l2_fit = fit_slope(lx, l2);
  s.hcurl_fit = fit_slope(lx, hc);
  return s;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "step,h,n_dofs,n_cells,l2_error,curl_error,hcurl_error,iterations,residual\n";
  out << std::setprecision(10);
  for (const auto& r : records)
    out << r.step << ',' << r.h << ',' << r.n_dofs << ',' << r.n_cells << ',' << r.l2_error << ','
        << r.curl_error << ',' << r.hcurl_error << ',' << r.iterations << ',' << r.residual << '\n';
}

void write_slopes(std::ostream& out, const Slopes& s) {
  out << std::setprecision(6) << "l2_last_two " << s.l2_last << "\nhcurl_last_two " << s.hcurl_last
      << "\nl2_fit " << s.l2_fit << "\nhcurl_fit " << s.hcurl_fit << '\n';
}

void write_plot_script(std::ostream& out, const std::string& csv_name, bool by_dofs) {
  out << "set datafile separator ','\nset logscale xy\nset key bottom left\n"
      << "set xlabel '" << (by_dofs ? "DOFs" : "h") << "'\nset ylabel 'error'\n"
      << "set terminal pngcairo size 800,600\nset output 'convergence.png'\n"
      << "plot '" << csv_name << "' using " << (by_dofs ? 3 : 2)
      << ":5 skip 1 with linespoints title 'L2', \\\n     '" << csv_name << "' using "
      << (by_dofs ? 3 : 2) << ":7 skip 1 with linespoints title 'H(curl)'\n";
}

double loglog_interpolate(const std::vector<ConvergenceRecord>& curve, double n,
                          double ConvergenceRecord::*error) {
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double n0 = curve[i].n_dofs, n1 = curve[i + 1].n_dofs;
    if (n >= n0 && n <= n1) {
      const double t = (std::log(n) - std::log(n0)) / (std::log(n1) - std::log(n0));
      return std::exp((1 - t) * std::log(curve[i].*error) + t * std::log(curve[i + 1].*error));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace edgefem

namespace edgefem {

double expected_slope(const ExperimentConfig& config) {
  const double k = config.order;
  if (config.problem == "lshaped") return std::min(k, 2.0 * config.lshaped_n / 3.0);
  if (config.problem == "fichera") return std::min(k, 2.0 / 3.0);
  return k;
}

std::vector<int> adaptive_violations(const std::vector<ConvergenceRecord>& adaptive,
                                     const std::vector<ConvergenceRecord>& uniform, int min_dofs,
                                     double ConvergenceRecord::*error) {
  std::vector<int> bad;
  for (const auto& r : adaptive) {
    if (r.n_dofs <= min_dofs) continue;
    const double u = loglog_interpolate(uniform, r.n_dofs, error);
    if (!(r.*error < u)) bad.push_back(r.step);
  }
  return bad;
}

}  // namespace edgefem
