// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/polynomial.hpp"
#include "edgefem/quadrature.hpp"
#include "edgefem/topology.hpp"

#include <functional>
#include <memory>

namespace edgefem {

using ReferenceField = std::function<Vec3(const Vec3&)>;

// One degree of freedom: scale * integral over the owner entity of
// (v . direction) * test, with test a polynomial in the entity parameters.
struct Moment {
  int entity_dim = 0;
  int entity_index = 0;
  int local_index = 0;
  Vec3 direction = Vec3::Zero();
  Polynomial test;
  double scale = 1.0;
  // Set for Lagrange tests, which are then evaluated in product form.
  std::vector<int> test_orders;
  MultiIndex test_node{0, 0, 0};

  double test_value(const Vec3& param) const {
    return test_orders.empty() ? test(param) : lagrange_tensor_value(test_orders, test_node, param);
  }
};

// Affine parameterization x = origin + sum_i param_i * axes[i] of an entity of
// the reference cell. Parameters live on [0,1], the unit square, the unit
// triangle or the cell itself.
struct EntityChart {
  Vec3 origin = Vec3::Zero();
  std::vector<Vec3> axes;
  double measure_factor = 1.0;  // Jacobian of the parameterization
  CellKind param_kind;          // square/triangle for faces, the cell for interiors
};

EntityChart entity_chart(CellKind kind, const EntityRef& entity);

// Points and weights of a quadrature rule mapped onto an entity. Weights
// include the parameterization Jacobian.
QuadratureRule entity_rule(CellKind kind, const EntityRef& entity, int degree);

// Shape function data at one point: one row per function.
struct ShapeValues {
  Eigen::Matrix<double, Eigen::Dynamic, 3> values;
  Eigen::Matrix<double, Eigen::Dynamic, 3> curls;
};

// The edge element of the first kind of order k on a reference cell.
class ReferenceElement {
 public:
  ReferenceElement(CellKind kind, int order);

  CellKind kind() const { return kind_; }
  int order() const { return order_; }
  int num_dofs() const { return static_cast<int>(moments_.size()); }

  const VectorBasis& prebasis() const { return prebasis_; }
  const std::vector<Moment>& moments() const { return moments_; }
  const Matrix& moment_matrix() const { return C_; }
  // Coefficients of the canonical shapes in the pre-basis: phi^a = sum_b Q(a,b) varphi^b.
  const Matrix& qmat() const { return Q_; }
  double rcond() const { return rcond_; }

  // DOFs owned by each entity of a given dimension (uniform per dimension).
  int dofs_per_entity(int dim) const { return dofs_per_entity_[dim]; }
  const std::vector<int>& entity_dofs(int dim, int index) const {
    return entity_dofs_[dim][index];
  }
  int dof_index(int dim, int index, int local) const { return entity_dofs_[dim][index][local]; }

  // Cube elements only: every pre-basis function is a nodal Lagrange function
  // of one component.
  bool nodal_prebasis() const { return !prebasis_nodes_.empty(); }
  const std::vector<int>& prebasis_component() const { return prebasis_component_; }
  const std::vector<Vec3>& prebasis_nodes() const { return prebasis_nodes_; }

  ShapeValues eval_prebasis(const Vec3& x) const;
  ShapeValues eval_shapes(const Vec3& x) const;
  std::vector<ShapeValues> tabulate(const QuadratureRule& rule) const;

  // All moments of a field given on the reference cell.
  Vector apply_moments(const ReferenceField& field) const;
  // The moments owned by one entity, in entity-local order.
  Vector apply_entity_moments(int dim, int index, const ReferenceField& field) const;

  // Moments of an explicit pre-basis expansion (the matrix C applied to coefficients).
  Matrix moments_of_prebasis() const { return C_; }

 private:
  struct EntityQuadrature {
    std::vector<Vec3> points;
    // weights[m][p]: vector weight of local moment m at point p.
    std::vector<std::vector<Vec3>> weights;
  };

  void build_prebasis();
  void build_moments();
  void build_entity_quadrature();
  void build_change_of_basis();

  CellKind kind_;
  int order_;
  VectorBasis prebasis_;
  std::vector<int> prebasis_component_;
  std::vector<Vec3> prebasis_nodes_;
  std::vector<MultiIndex> prebasis_node_index_;
  std::vector<Moment> moments_;
  std::vector<int> dofs_per_entity_;
  std::vector<std::vector<std::vector<int>>> entity_dofs_;
  std::vector<std::vector<EntityQuadrature>> entity_quad_;
  Matrix C_;
  Matrix Q_;
  double rcond_ = 0.0;
};

// Shared immutable instance per (kind, order).
std::shared_ptr<const ReferenceElement> get_element(CellKind kind, int order);

// Closed-form local DOF counts.
int expected_num_dofs(CellKind kind, int order);

}  // namespace edgefem
