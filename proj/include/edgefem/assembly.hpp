// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/interpolation.hpp"
#include "edgefem/space.hpp"

#include <string>

namespace edgefem {

struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> cols;
  std::vector<double> vals;

  std::size_t nnz() const { return vals.size(); }
  void multiply(const Vector& x, Vector& y) const;
  Vector diagonal() const;
  double max_asymmetry() const;
  Matrix to_dense() const;
};

struct Triplet {
  int row;
  int col;
  double value;
};

// Sums duplicates.
CsrMatrix csr_from_triplets(int n, std::vector<Triplet> triplets);

// Per-cell positive coefficients of curl(alpha curl u) + beta u.
struct Coefficients {
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<double> alpha_cell;  // overrides alpha when non-empty
  std::vector<double> beta_cell;

  double alpha_of(std::size_t c) const { return alpha_cell.empty() ? alpha : alpha_cell[c]; }
  double beta_of(std::size_t c) const { return beta_cell.empty() ? beta : beta_cell[c]; }
};

struct SparseSystem {
  CsrMatrix matrix;  // over the free DOFs of the space
  Vector rhs;
};

struct ElementSystem {
  Matrix matrix;
  Vector rhs;
};

// Element matrix (beta mass + alpha curl-curl) and load vector of one cell.
ElementSystem element_system(const ReferenceElement& element, const AffineMap& map, double alpha,
                             double beta, const PhysicalField& f, int degree);

// Constraints are applied while inserting element contributions; Dirichlet
// columns move to the right-hand side using the `dirichlet` DOF values.
SparseSystem assemble(const Space& space, const Coefficients& coeffs, const PhysicalField& f,
                      const Vector& dirichlet, int degree = -1);

// Debug path: the unconstrained dense system reduced with an explicit
// prolongation P, returning the free block and its right-hand side.
struct DenseSystem {
  Matrix matrix;
  Vector rhs;
};
DenseSystem assemble_explicit(const Space& space, const Coefficients& coeffs, const PhysicalField& f,
                              const Vector& dirichlet, int degree = -1);
// P maps unconstrained DOF values to all DOFs; columns follow DOF ids.
Matrix prolongation(const Space& space);

struct SolveReport {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
  std::vector<double> history;
};

// Jacobi-preconditioned conjugate gradients; throws ConvergenceError after maxit.
SolveReport solve_cg(const CsrMatrix& A, const Vector& b, double tol = 1e-10, int maxit = 20000);

// Sparse LDL^T with fill-reducing ordering. Jacobi-CG needs O(1/h_min)
// iterations, which graded adaptive meshes make impractical.
SolveReport solve_sparse_direct(const CsrMatrix& A, const Vector& b);

// Dense Cholesky, intended for small systems (n < 2000).
Vector solve_dense(const CsrMatrix& A, const Vector& b);

// Builds the full DOF vector from the free solution, the Dirichlet values and
// the constraint rows.
FEFunction finalize(std::shared_ptr<const Space> space, const Vector& free_solution,
                    const Vector& dirichlet);

void write_matrix_market(const CsrMatrix& A, const std::string& path);
void write_matrix_market(const Vector& v, const std::string& path);

}  // namespace edgefem
