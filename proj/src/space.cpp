// SPDX-License-Identifier: Apache-2.0
#include "edgefem/space.hpp"

namespace edgefem {

Space::Space(std::shared_ptr<const Mesh> mesh, std::shared_ptr<const ReferenceElement> element,
             ConstraintSet constraints)
    : mesh_(std::move(mesh)), element_(std::move(element)), constraints_(std::move(constraints)) {
  dofs_ = build_dof_map(*mesh_, *element_);
  status_.assign(dofs_.n_dofs, DofStatus::free);
  free_index_.assign(dofs_.n_dofs, -1);
  for (int g = 0; g < dofs_.n_dofs; ++g) {
    if (constraints_.constrained(g))
      status_[g] = DofStatus::constrained;
    else if (dofs_.boundary[g])
      status_[g] = DofStatus::dirichlet;
    else {
      free_index_[g] = static_cast<int>(free_dofs_.size());
      free_dofs_.push_back(g);
    }
  }
  for (const auto& [g, row] : constraints_.rows) {
    if (g < 0 || g >= dofs_.n_dofs) throw std::invalid_argument("constraint on unknown DOF");
    for (const auto& [master, c] : row)
      if (constraints_.constrained(master))
        throw std::logic_error("constraint master is itself constrained");
  }
}

std::vector<std::pair<int, double>> Space::expand(int dof) const {
  if (status_[dof] != DofStatus::constrained) return {{dof, 1.0}};
  return constraints_.rows.at(dof);
}

std::shared_ptr<const Space> make_space(std::shared_ptr<const Mesh> mesh, int order) {
  auto element = get_element(mesh->kind(), order);
  return std::make_shared<const Space>(std::move(mesh), std::move(element));
}

std::shared_ptr<const Space> make_forest_space(const Forest& forest, int order) {
  auto mesh = std::make_shared<const Mesh>(forest.leaf_mesh());
  auto element = get_element(mesh->kind(), order);
  const DofMap dofs = build_dof_map(*mesh, *element);
  ConstraintSet cs = build_constraints(dofs, *element, forest.find_hanging(*mesh));
  return std::make_shared<const Space>(std::move(mesh), std::move(element), std::move(cs));
}

FEFunction::FEFunction(std::shared_ptr<const Space> space, Vector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->num_dofs())
    throw std::invalid_argument("FE function vector size does not match the space");
}

Vector FEFunction::cell_coefficients(std::size_t cell) const {
  const auto dofs = space_->dofs().cell(cell);
  Vector c(static_cast<Eigen::Index>(dofs.size()));
  for (std::size_t i = 0; i < dofs.size(); ++i) c[i] = values_[dofs[i]];
  return c;
}

Vec3 FEFunction::value(std::size_t cell, const Vec3& xhat) const {
  const ShapeValues s = space_->element().eval_shapes(xhat);
  const Vec3 ref = s.values.transpose() * cell_coefficients(cell);
  return space_->mesh().map(cell).push_value(ref);
}

Vec3 FEFunction::curl(std::size_t cell, const Vec3& xhat) const {
  const ShapeValues s = space_->element().eval_shapes(xhat);
  const Vec3 ref = s.curls.transpose() * cell_coefficients(cell);
  return space_->mesh().map(cell).push_curl(ref);
}

}  // namespace edgefem
