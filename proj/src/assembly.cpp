// SPDX-License-Identifier: Apache-2.0
#include "edgefem/assembly.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace edgefem {

void CsrMatrix::multiply(const Vector& x, Vector& y) const {
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += vals[p] * x[cols[p]];
    y[i] = s;
  }
}

Vector CsrMatrix::diagonal() const {
  Vector d = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p)
      if (cols[p] == i) d[i] += vals[p];
  return d;
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const int j = cols[p];
      const auto b = cols.begin() + row_ptr[j], e = cols.begin() + row_ptr[j + 1];
      const auto it = std::lower_bound(b, e, i);
      const double t = (it != e && *it == i) ? vals[it - cols.begin()] : 0.0;
      worst = std::max(worst, std::abs(vals[p] - t));
    }
  return worst;
}

Matrix CsrMatrix::to_dense() const {
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int p = row_ptr[i]; p < row_ptr[i + 1]; ++p) d(i, cols[p]) += vals[p];
  return d;
}

CsrMatrix csr_from_triplets(int n, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix A;
  A.n = n;
  A.row_ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    double s = 0.0;
    while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col) s += t[j++].value;
    A.cols.push_back(t[i].col);
    A.vals.push_back(s);
    ++A.row_ptr[t[i].row + 1];
    i = j;
  }
  for (int i = 0; i < n; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
  return A;
}

namespace {

int default_degree(const ReferenceElement& e, int degree) {
  return degree < 0 ? 2 * e.order() + 2 : degree;
}

ElementSystem element_from_table(const std::vector<ShapeValues>& tab, const QuadratureRule& rule,
                                 const AffineMap& map, double alpha, double beta,
                                 const PhysicalField& f) {
  const Eigen::Index n = tab.front().values.rows();
  ElementSystem es{Matrix::Zero(n, n), Vector::Zero(n)};
  const Mat3 value_map = map.inverse();                    // row form of A^{-T}
  const Mat3 curl_map = map.jacobian().transpose() / map.det();  // row form of A / det
  Eigen::Matrix<double, Eigen::Dynamic, 3> V(n, 3), Cc(n, 3);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * map.measure();
    V.noalias() = tab[q].values * value_map;
    Cc.noalias() = tab[q].curls * curl_map;
    es.matrix.noalias() += (w * beta) * V * V.transpose();
    es.matrix.noalias() += (w * alpha) * Cc * Cc.transpose();
    if (f) es.rhs.noalias() += w * V * f(map.apply(rule.points[q]));
  }
  return es;
}

void check_coefficients(const Space& space, const Coefficients& k) {
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c)
    if (!(k.alpha_of(c) > 0.0) || !(k.beta_of(c) > 0.0))
      throw std::invalid_argument("alpha and beta must be positive");
  if ((!k.alpha_cell.empty() && k.alpha_cell.size() != space.mesh().num_cells()) ||
      (!k.beta_cell.empty() && k.beta_cell.size() != space.mesh().num_cells()))
    throw std::invalid_argument("per-cell coefficients need one value per cell");
}

}  // namespace

ElementSystem element_system(const ReferenceElement& element, const AffineMap& map, double alpha,
                             double beta, const PhysicalField& f, int degree) {
  const QuadratureRule rule = rule_for(element.kind(), default_degree(element, degree));
  return element_from_table(element.tabulate(rule), rule, map, alpha, beta, f);
}

SparseSystem assemble(const Space& space, const Coefficients& coeffs, const PhysicalField& f,
                      const Vector& dirichlet, int degree) {
  check_coefficients(space, coeffs);
  const Mesh& mesh = space.mesh();
  const ReferenceElement& element = space.element();
  const QuadratureRule rule = rule_for(element.kind(), default_degree(element, degree));
  const auto tab = element.tabulate(rule);
  const int nf = space.num_free();
  SparseSystem sys;
  sys.rhs = Vector::Zero(nf);
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_cells() * element.num_dofs() * element.num_dofs());

  std::vector<std::vector<std::pair<int, double>>> expansion(element.num_dofs());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const ElementSystem es =
        element_from_table(tab, rule, mesh.map(c), coeffs.alpha_of(c), coeffs.beta_of(c), f);
    const auto dofs = space.dofs().cell(c);
    for (std::size_t a = 0; a < dofs.size(); ++a) expansion[a] = space.expand(dofs[a]);
    for (std::size_t a = 0; a < dofs.size(); ++a)
      for (const auto& [ga, ca] : expansion[a]) {
        const int ia = space.free_index(ga);
        if (ia < 0) continue;
        sys.rhs[ia] += ca * es.rhs[a];
        for (std::size_t b = 0; b < dofs.size(); ++b)
          for (const auto& [gb, cb] : expansion[b]) {
            const double v = ca * cb * es.matrix(a, b);
            const int ib = space.free_index(gb);
            if (ib >= 0)
              triplets.push_back({ia, ib, v});
            else
              sys.rhs[ia] -= v * dirichlet[gb];
          }
      }
  }
  sys.matrix = csr_from_triplets(nf, std::move(triplets));
  return sys;
}

Matrix prolongation(const Space& space) {
  const int n = space.num_dofs();
  Matrix P = Matrix::Zero(n, n);
  for (int g = 0; g < n; ++g)
    for (const auto& [m, c] : space.expand(g)) P(g, m) += c;
  return P;
}

DenseSystem assemble_explicit(const Space& space, const Coefficients& coeffs, const PhysicalField& f,
                              const Vector& dirichlet, int degree) {
  check_coefficients(space, coeffs);
  const Mesh& mesh = space.mesh();
  const ReferenceElement& element = space.element();
  const int n = space.num_dofs();
  Matrix A = Matrix::Zero(n, n);
  Vector b = Vector::Zero(n);
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const ElementSystem es =
        element_system(element, mesh.map(c), coeffs.alpha_of(c), coeffs.beta_of(c), f, degree);
    const auto dofs = space.dofs().cell(c);
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      b[dofs[i]] += es.rhs[i];
      for (std::size_t j = 0; j < dofs.size(); ++j) A(dofs[i], dofs[j]) += es.matrix(i, j);
    }
  }
  const Matrix P = prolongation(space);
  const Matrix Ar = P.transpose() * A * P;
  const Vector br = P.transpose() * b;
  const auto& free = space.free_dofs();
  const int nf = static_cast<int>(free.size());
  DenseSystem out{Matrix(nf, nf), Vector(nf)};
  for (int i = 0; i < nf; ++i) {
    out.rhs[i] = br[free[i]];
    for (int g = 0; g < n; ++g)
      if (space.status(g) == DofStatus::dirichlet) out.rhs[i] -= Ar(free[i], g) * dirichlet[g];
    for (int j = 0; j < nf; ++j) out.matrix(i, j) = Ar(free[i], free[j]);
  }
  return out;
}

SolveReport solve_cg(const CsrMatrix& A, const Vector& b, double tol, int maxit) {
  const int n = A.n;
  SolveReport rep;
  rep.x = Vector::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return rep;
  Vector inv_diag = A.diagonal();
  for (int i = 0; i < n; ++i) {
    if (!(inv_diag[i] > 0.0)) throw std::invalid_argument("CG needs a positive diagonal");
    inv_diag[i] = 1.0 / inv_diag[i];
  }
  Vector r = b, z = inv_diag.cwiseProduct(r), p = z, Ap(n);
  double rz = r.dot(z);
  rep.history.push_back(1.0);
  for (int it = 1; it <= maxit; ++it) {
    A.multiply(p, Ap);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw ConvergenceError("CG breakdown: matrix not positive definite", rep.history);
    const double alpha = rz / pAp;
    rep.x.noalias() += alpha * p;
    r.noalias() -= alpha * Ap;
    const double res = r.norm() / bnorm;
    rep.history.push_back(res);
    rep.iterations = it;
    rep.relative_residual = res;
    if (res <= tol) return rep;
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw ConvergenceError("CG did not converge in " + std::to_string(maxit) +
                             " iterations (residual " + std::to_string(rep.relative_residual) + ")",
                         rep.history);
}

SolveReport solve_sparse_direct(const CsrMatrix& A, const Vector& b) {
  Eigen::SparseMatrix<double> S(A.n, A.n);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nnz());
  for (int i = 0; i < A.n; ++i)
    for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p) t.emplace_back(i, A.cols[p], A.vals[p]);
  S.setFromTriplets(t.begin(), t.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(S);
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("sparse LDL^T factorization failed", {});
  SolveReport rep;
  rep.x = ldlt.solve(b);
  const double bnorm = b.norm();
  rep.relative_residual = bnorm > 0.0 ? (S * rep.x - b).norm() / bnorm : 0.0;
  rep.history = {rep.relative_residual};
  return rep;
}

Vector solve_dense(const CsrMatrix& A, const Vector& b) {
  if (A.n >= 2000) throw std::invalid_argument("dense solve is limited to n < 2000");
  Eigen::LLT<Matrix> llt(A.to_dense());
  if (llt.info() != Eigen::Success) throw std::invalid_argument("matrix is not positive definite");
  return llt.solve(b);
}

FEFunction finalize(std::shared_ptr<const Space> space, const Vector& free_solution,
                    const Vector& dirichlet) {
  if (free_solution.size() != space->num_free()) throw std::invalid_argument("solution size mismatch");
  Vector full = Vector::Zero(space->num_dofs());
  for (int g = 0; g < space->num_dofs(); ++g) {
    if (space->status(g) == DofStatus::dirichlet) full[g] = dirichlet[g];
    if (space->status(g) == DofStatus::free) full[g] = free_solution[space->free_index(g)];
  }
  for (const auto& [g, row] : space->constraints().rows) {
    double s = 0.0;
    for (const auto& [m, c] : row) s += c * full[m];
    full[g] = s;
  }
  return FEFunction(std::move(space), std::move(full));
}

void write_matrix_market(const CsrMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.n << ' ' << A.n << ' ' << A.nnz() << '\n' << std::setprecision(17);
  for (int i = 0; i < A.n; ++i)
    for (int p = A.row_ptr[i]; p < A.row_ptr[i + 1]; ++p)
      out << i + 1 << ' ' << A.cols[p] + 1 << ' ' << A.vals[p] << '\n';
}

void write_matrix_market(const Vector& v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
}

}  // namespace edgefem
