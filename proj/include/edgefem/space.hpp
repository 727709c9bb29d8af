// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "edgefem/amr.hpp"
#include "edgefem/mesh.hpp"
#include "edgefem/reference_element.hpp"

#include <memory>

namespace edgefem {

enum class DofStatus : char { free, dirichlet, constrained };

// Global edge element space on a mesh with full Dirichlet boundary. Hanging
// DOFs are constrained even when they sit on the boundary.
class Space {
 public:
  Space(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const ReferenceElement> element,
        ConstraintSet constraints = {});

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const ReferenceElement& element() const { return *element_; }
  const DofMap& dofs() const { return dofs_; }
  const ConstraintSet& constraints() const { return constraints_; }

  int num_dofs() const { return dofs_.n_dofs; }
  int num_free() const { return static_cast<int>(free_dofs_.size()); }
  DofStatus status(int dof) const { return status_[dof]; }
  int free_index(int dof) const { return free_index_[dof]; }
  const std::vector<int>& free_dofs() const { return free_dofs_; }

  // Unconstrained DOFs and weights that a DOF stands for.
  std::vector<std::pair<int, double>> expand(int dof) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const ReferenceElement> element_;
  DofMap dofs_;
  ConstraintSet constraints_;
  std::vector<DofStatus> status_;
  std::vector<int> free_index_;
  std::vector<int> free_dofs_;
};

std::shared_ptr<const Space> make_space(std::shared_ptr<const Mesh> mesh, int order);

// Space on the leaves of a balanced forest including the hanging constraints.
std::shared_ptr<const Space> make_forest_space(const Forest& forest, int order);

// Full DOF vector (free, Dirichlet and constrained entries) bound to a space.
class FEFunction {
 public:
  FEFunction(std::shared_ptr<const Space> space, Vector values);

  const Space& space() const { return *space_; }
  std::shared_ptr<const Space> space_ptr() const { return space_; }
  const Vector& values() const { return values_; }

  Vector cell_coefficients(std::size_t cell) const;
  // Value and curl at a reference point of a cell, mapped to physical space.
  Vec3 value(std::size_t cell, const Vec3& xhat) const;
  Vec3 curl(std::size_t cell, const Vec3& xhat) const;

 private:
  std::shared_ptr<const Space> space_;
  Vector values_;
};

}  // namespace edgefem
