// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace edgefem {

using MultiIndex = std::array<int, 3>;

inline int total_degree(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

// Sparse polynomial in up to three variables, stored as monomial
// coefficients sorted by exponent.
class Polynomial {
 public:
  using Term = std::pair<MultiIndex, double>;

  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial monomial(const MultiIndex& exponents, double coefficient = 1.0);
  // The affine function c0 + c1 x_axis.
  static Polynomial linear(int axis, double slope, double offset);

  const std::vector<Term>& terms() const { return terms_; }
  int degree() const;
  int degree_in(int axis) const;
  bool is_zero(double tol = 0.0) const;

  double operator()(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  Polynomial derivative(int axis) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }

 private:
  void add_term(const MultiIndex& e, double c);
  void compress();
  std::vector<Term> terms_;
};

// Vector polynomial with three components; 2D fields keep z == 0.
struct VectorPolynomial {
  std::array<Polynomial, 3> comp;

  Vec3 operator()(const Vec3& x) const;
  // 3D curl; for a 2D field the scalar curl comes out in z.
  Vec3 curl(const Vec3& x) const;
  VectorPolynomial curl() const;
  Polynomial dot(const VectorPolynomial& o) const;
  Polynomial dot_position() const;  // p(x) . x
};

struct ScalarBasis {
  int dim = 0;
  std::vector<Polynomial> terms;
  std::size_t size() const { return terms.size(); }
};

struct VectorBasis {
  int dim = 0;
  std::vector<VectorPolynomial> terms;
  std::size_t size() const { return terms.size(); }
};

// Multi-indices of Q_orders, ordered lexicographically (first exponent slowest).
std::vector<MultiIndex> q_indices(const std::vector<int>& orders);
// Multi-indices with |a| <= k in d variables, lexicographic.
std::vector<MultiIndex> p_indices(int k, int d);

ScalarBasis monomial_Q(const std::vector<int>& orders);
ScalarBasis monomial_P(int k, int d);

// Size of the full polynomial space P_k in d variables: T^d_{k+1}.
long dim_P(int k, int d);
// Size of the homogeneous space of degree k in d variables.
long dim_homogeneous(int k, int d);
// Size of the S_k space: d * dim(homogeneous_k) - dim(homogeneous_{k+1}).
long dim_S(int k, int d);

struct LagrangeBasis1D {
  int order = 0;
  std::vector<double> nodes;
  std::vector<Polynomial> polys;  // in the variable x_1
};

// Equispaced nodes on [0, 1]; order 0 is the constant with node 1/2.
LagrangeBasis1D lagrange_1d(int order);

// Values and derivatives of all order-p basis functions at x, evaluated in
// product form. The expanded monomial form loses digits near x = 1.
void lagrange_1d_eval(int order, double x, std::vector<double>& value, std::vector<double>& derivative);

// Product-form value of the tensor Lagrange function with node multi-index idx.
double lagrange_tensor_value(const std::vector<int>& orders, const MultiIndex& idx, const Vec3& x);

// Tensor product Lagrange basis with per-axis orders. Functions are ordered
// lexicographically by node multi-index, matching q_indices.
struct LagrangeTensor {
  std::vector<int> orders;
  std::vector<Polynomial> polys;
  std::vector<Vec3> nodes;
};
LagrangeTensor lagrange_tensor(const std::vector<int>& orders);

// The S_k spanning set of homogeneous fields with p(x).x == 0.
VectorBasis sk_basis(int k, int d);

struct BasisValues {
  std::vector<Vec3> values;
  std::vector<Vec3> curls;
};
BasisValues eval_basis(const VectorBasis& basis, const Vec3& point);

}  // namespace edgefem
