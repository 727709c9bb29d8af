// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/problems.hpp"
#include "edgefem/topology.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgefem {

// auto: Jacobi-CG for uniform runs, sparse direct for adaptive ones.
enum class SolverKind { automatic, cg, direct };
SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind kind);

struct ExperimentConfig {
  std::string problem = "unit2d";
  int lshaped_n = 1;
  Family family = Family::cube;
  int order = 1;
  int steps = 4;
  bool adaptive = false;
  double mark_fraction = 0.05;
  double tol = 1e-10;
  int max_iterations = 100000;
  SolverKind solver = SolverKind::automatic;
  int initial_divisions = 0;  // 0: problem default
  std::uint64_t seed = 0;
  std::string matrix_dump;  // Matrix Market prefix for the last step, empty for none

  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct ConvergenceRecord {
  int step = 0;
  double h = 0.0;
  int n_dofs = 0;  // free DOFs
  int n_cells = 0;
  double l2_error = 0.0;
  double curl_error = 0.0;
  double hcurl_error = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Thrown when the linear solver fails; carries the completed steps.
class ExperimentFailure : public std::runtime_error {
 public:
  ExperimentFailure(const std::string& what, std::vector<ConvergenceRecord> done)
      : std::runtime_error(what), records(std::move(done)) {}
  std::vector<ConvergenceRecord> records;
};

using StepCallback = std::function<void(const ConvergenceRecord&)>;
// Mesh of each step with the per-cell squared L2 errors.
using MeshCallback = std::function<void(int step, const Mesh&, const std::vector<double>&)>;

std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& config,
                                              const StepCallback& on_step = {},
                                              const MeshCallback& on_mesh = {});

// Least-squares slope of log(error) against log(h). With adaptive records
// n_dofs^(-1/dim) stands in for h.
struct Slopes {
  double l2_last = 0.0;
  double hcurl_last = 0.0;
  double l2_fit = 0.0;
  double hcurl_fit = 0.0;
};
Slopes compute_slopes(const std::vector<ConvergenceRecord>& records, bool by_dofs, int dim);
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);
void write_slopes(std::ostream& out, const Slopes& slopes);
// Gnuplot script plotting the CSV written next to it.
void write_plot_script(std::ostream& out, const std::string& csv_name, bool by_dofs);

// Rate predicted for the H(curl) and L2 errors of a uniform run: k on the
// smooth problems, min(k, 2n/3) on the L-shaped one, min(k, 2/3) on Fichera.
double expected_slope(const ExperimentConfig& config);

// Adaptive records with n_dofs > min_dofs whose error is not strictly below
// the log-log interpolated uniform curve at the same DOF count (records past
// the end of the uniform curve count as violations).
std::vector<int> adaptive_violations(const std::vector<ConvergenceRecord>& adaptive,
                                     const std::vector<ConvergenceRecord>& uniform, int min_dofs,
                                     double ConvergenceRecord::*error);

// Value of the piecewise log-log linear interpolant of (n_dofs, error) at n;
// NaN outside the sampled range.
double loglog_interpolate(const std::vector<ConvergenceRecord>& curve, double n,
                          double ConvergenceRecord::*error);

}  // namespace edgefem
